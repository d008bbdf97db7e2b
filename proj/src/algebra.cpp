#include "regge/algebra.hpp"

#include <algorithm>
#include <array>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

int perm_parity(std::array<int, 4> p, int n) {
  int s = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) s = -s;
    }
  return s;
}

}  // namespace

Eigen::Matrix4d metric(Signature sig) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
  if (sig == Signature::Lorentzian) g(0, 0) = -1;
  return g;
}

Complex kappa(Signature sig) {
  return sig == Signature::Lorentzian ? Complex(0, 1) : Complex(1, 0);
}

int eps4(int a, int b, int c, int d) { return perm_parity({a, b, c, d}, 4); }
int eps3(int a, int b, int c) { return perm_parity({a, b, c, 0}, 3); }

double rotor_distance(const Rotor& a, const Rotor& b) {
  return std::max(std::abs(a.w - b.w), (a.u - b.u).cwiseAbs().maxCoeff());
}

Matrix4c sigma_lower(Chirality c, int k, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const Complex sk = double(sign_of(c)) * kappa(sig);
  const int K = k + 1;
  Matrix4c m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double e = (a == 0 || b == 0) ? 0.0 : double(eps3(k, a - 1, b - 1));
      m(a, b) = -e + sk * (g(a, K) * g(0, b) - g(a, 0) * g(K, b));
    }
  return m;
}

Matrix4c sigma_mixed(Chirality c, int k, Signature sig) {
  return metric(sig).cast<Complex>() * sigma_lower(c, k, sig);
}

Matrix4c chiral_matrix(const Rotor& r, Chirality c, Signature sig) {
  Matrix4c m = r.w * Matrix4c::Identity();
  for (int k = 0; k < 3; ++k) m += r.u(k) * sigma_mixed(c, k, sig);
  return m;
}

Matrix4c assemble_complex(const Rotor& plus, const Rotor& minus, Signature sig) {
  return chiral_matrix(plus, Chirality::Plus, sig) * chiral_matrix(minus, Chirality::Minus, sig);
}

LorentzMatrix assemble(const Rotor& plus, const Rotor& minus, Signature sig) {
  const Matrix4c m = assemble_complex(plus, minus, sig);
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (m.imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ValidationError("chiral factors do not assemble to a real matrix");
  return m.real();
}

std::pair<Rotor, Rotor> split_matrix(const Matrix4c& lambda, Signature sig) {
  std::array<Matrix4c, 4> P, Q;
  P[0] = Q[0] = Matrix4c::Identity();
  for (int k = 0; k < 3; ++k) {
    P[k + 1] = sigma_mixed(Chirality::Plus, k, sig);
    Q[k + 1] = sigma_mixed(Chirality::Minus, k, sig);
  }
  Eigen::Matrix4cd C;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) C(a, b) = ((P[a] * Q[b]).inverse() * lambda).trace() / 4.0;

  int col = 0;
  C.colwise().squaredNorm().maxCoeff(&col);
  Eigen::Vector4cd x = C.col(col);
  Complex xx = x.cwiseProduct(x).sum();
  if (std::abs(xx) < 1e-300) throw ValidationError("matrix has no chiral decomposition");
  x /= std::sqrt(xx);
  if (x(0).real() < 0 || (x(0).real() == 0 && x(0).imag() < 0)) x = -x;
  int row = 0;
  x.cwiseAbs().maxCoeff(&row);
  Eigen::Vector4cd y = C.row(row).transpose() / x(row);

  Rotor p, m;
  p.w = x(0);
  p.u = x.tail<3>();
  m.w = y(0);
  m.u = y.tail<3>();
  return {p, m};
}

std::pair<Rotor, Rotor> split_lorentz(const LorentzMatrix& lambda, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const double scale = 1.0 + lambda.cwiseAbs().maxCoeff();
  if ((lambda.transpose() * g * lambda - g).cwiseAbs().maxCoeff() > 1e-10 * scale * scale)
    throw ValidationError("matrix does not preserve the metric");
  if (lambda.determinant() <= 0) throw ValidationError("matrix is not proper");
  if (sig == Signature::Lorentzian && lambda(0, 0) < 1.0 - 1e-12)
    throw ValidationError("matrix is not orthochronous");
  auto pm = split_matrix(lambda.cast<Complex>(), sig);
  const Matrix4c back = assemble_complex(pm.first, pm.second, sig);
  if ((back - lambda.cast<Complex>()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ValidationError("chiral split failed to reproduce the input");
  return pm;
}

Matrix4c hodge_dual(const Matrix4c& a, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const Matrix4c low = g * a * g;
  Matrix4c d = Matrix4c::Zero();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          if (int e = eps4(p, q, r, s)) d(p, q) += 0.5 * double(e) * low(r, s);
  return d;
}

Matrix4c chiral_part(const Matrix4c& a, Chirality c, Signature sig) {
  return 0.5 * a + (0.5 * double(sign_of(c)) * kappa(sig)) * hodge_dual(a, sig);
}

Complex circ_tensor(const Matrix4c& a, const Matrix4c& b, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  return 0.5 * (g * a * g).cwiseProduct(b).sum();
}

Complex star_tensor(const Matrix4c& a, const Matrix4c& b, Signature sig) {
  const double det_g = metric(sig).determinant();
  Complex s = 0;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 4; ++t)
          if (int e = eps4(p, q, r, t)) s += double(e) * a(p, q) * b(r, t);
  // lowering all four indices of eps multiplies it by det g
  return 0.25 * det_g * s;
}

double SigmaIdentityReport::worst() const {
  return std::max({duality, product, commutator, bilinear});
}

SigmaIdentityReport sigma_identities_check(int random_cases, std::uint64_t seed) {
  const Signature sig = Signature::Lorentzian;
  const Eigen::Matrix4d g = metric(sig);
  SigmaIdentityReport rep;
  for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
    const double s = sign_of(c);
    for (int k = 0; k < 3; ++k) {
      const Matrix4c up = g * sigma_lower(c, k, sig) * g;
      // dual of the upper tensor built from the lowered one
      Matrix4c d = Matrix4c::Zero();
      const Matrix4c low = sigma_lower(c, k, sig);
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          for (int r = 0; r < 4; ++r)
            for (int t = 0; t < 4; ++t)
              if (int e = eps4(p, q, r, t)) d(p, q) += 0.5 * double(e) * low(r, t);
      rep.duality = std::max(rep.duality, (d + Complex(0, s) * up).cwiseAbs().maxCoeff());
      for (int l = 0; l < 3; ++l) {
        Matrix4c rhs = -double(k == l) * Matrix4c::Identity();
        for (int m = 0; m < 3; ++m) rhs += double(eps3(k, l, m)) * sigma_mixed(c, m, sig);
        const Matrix4c lhs = sigma_mixed(c, k, sig) * sigma_mixed(c, l, sig);
        rep.product = std::max(rep.product, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const Matrix4c a = sigma_mixed(Chirality::Plus, k, sig);
      const Matrix4c b = sigma_mixed(Chirality::Minus, l, sig);
      rep.commutator = std::max(rep.commutator, (a * b - b * a).cwiseAbs().maxCoeff());
    }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int i = 0; i < random_cases; ++i) {
    Matrix4c v = Matrix4c::Zero();
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const double x = nd(rng);
        v(p, q) = x;
        v(q, p) = -x;
      }
    const Complex vv = circ_tensor(v, v, sig), vs = star_tensor(v, v, sig);
    for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
      const Matrix4c cv = chiral_part(v, c, sig);
      const Complex lhs = 2.0 * circ_tensor(cv, cv, sig);
      const Complex rhs = vv + Complex(0, sign_of(c)) * vs;
      rep.bilinear = std::max(rep.bilinear, std::abs(lhs - rhs) / (1.0 + std::abs(vv)));
    }
    ++rep.cases;
  }
  return rep;
}

double haar_density(const Eigen::Vector3d& phi) {
  const double p = phi.norm();
  if (p < 1e-4) {
    // sin^2(p/2)/p^2 = 1/4 - p^2/48 + ...
    return (0.25 - p * p / 48.0) / (4 * kPi * kPi);
  }
  const double s = std::sin(p / 2);
  return s * s / (4 * kPi * kPi * p * p);
}

Rotor sample_haar(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = nd(rng);
  } while (q.norm() < 1e-12);
  q.normalize();
  Rotor r;
  r.w = q(0);
  r.u = q.tail<3>().cast<Complex>();
  return r;
}

double haar_normalization() {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto radial = [](double p) {
    return 4 * kPi * p * p * haar_density(Eigen::Vector3d(p, 0, 0));
  };
  return ts.integrate(radial, 0.0, 2 * kPi, 1e-14);
}

}  // namespace regge
