#include "regge/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace regge {

namespace {
constexpr double kPi = boost::math::constants::pi<double>();
}

Matrix4c dual_area_tensor(const EdgeVector& l1, const EdgeVector& l2, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const EdgeVector a = g * l1, b = g * l2;
  Matrix4c v = Matrix4c::Zero();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          if (int e = eps4(p, q, r, s)) v(p, q) += 0.5 * double(e) * a(r) * b(s);
  return v;
}

ChiralVec chiral_vector(const Matrix4c& t, Chirality c, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const Matrix4c low = g * t * g;
  const Complex sk = double(sign_of(c)) * kappa(sig);
  ChiralVec out;
  for (int k = 0; k < 3; ++k) {
    Complex s = 0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m)
        if (int e = eps3(k, l, m)) s -= double(e) * t(l + 1, m + 1);
    s += sk * (low(k + 1, 0) - low(0, k + 1));
    out(k) = s / 2.0;
  }
  return out;
}

Matrix4c chiral_tensor(const ChiralVec& v, Chirality c, Signature sig) {
  Matrix4c m = Matrix4c::Zero();
  for (int k = 0; k < 3; ++k) m += 0.5 * v(k) * sigma_lower(c, k, sig);
  return m;
}

Bivector bivector_from_edges(const EdgeVector& l1, const EdgeVector& l2, Signature sig) {
  Bivector b;
  b.tensor = dual_area_tensor(l1, l2, sig);
  b.plus = chiral_vector(b.tensor, Chirality::Plus, sig);
  b.minus = chiral_vector(b.tensor, Chirality::Minus, sig);
  return b;
}

Complex clean_sqrt(Complex z) {
  if (std::abs(z.imag()) <= 1e-12 * std::abs(z)) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

Complex area(const Bivector& b) { return clean_sqrt(square(b.plus)); }

const std::array<FaceId, 10>& all_faces() {
  static const std::array<FaceId, 10> faces = [] {
    std::array<FaceId, 10> f;
    int n = 0;
    for (int i = 0; i < 5; ++i)
      for (int k = i + 1; k < 5; ++k) f[n++] = FaceId{i, k};
    return f;
  }();
  return faces;
}

int face_index(FaceId f) {
  const auto& faces = all_faces();
  for (int n = 0; n < 10; ++n)
    if (faces[n] == f) return n;
  throw ValidationError("face must be an edge (i,k) with i < k");
}

Complex hyperdihedral_angle(const std::array<EdgeVector, 3>& tri, const EdgeVector& p,
                            const EdgeVector& q, Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  Eigen::Matrix<double, 4, 2> E;
  E.col(0) = tri[1] - tri[0];
  E.col(1) = tri[2] - tri[0];
  const Eigen::Matrix2d G = E.transpose() * g * E;
  const double gs = G.cwiseAbs().maxCoeff();
  if (std::abs(G.determinant()) < 1e-14 * gs * gs)
    throw DegenerateGeometry("triangle is degenerate or null");
  const Eigen::Matrix2d Gi = G.inverse();
  auto proj = [&](const EdgeVector& y) -> EdgeVector {
    const EdgeVector d = y - tri[0];
    return d - E * (Gi * (E.transpose() * g * d));
  };
  const EdgeVector np = proj(p), nq = proj(q);
  Eigen::Matrix2d H;
  H << np.dot(g * np), np.dot(g * nq), nq.dot(g * np), nq.dot(g * nq);
  const double hs = H.cwiseAbs().maxCoeff();
  if (hs == 0 || std::abs(H.determinant()) < 1e-14 * hs * hs)
    throw BranchError("normal plane of the triangle is null");

  if (H.determinant() > 0) {
    const double c = H(0, 1) / std::sqrt(H(0, 0) * H(1, 1));
    return std::acos(std::clamp(c, -1.0, 1.0));
  }

  // Indefinite normal plane: split into spacelike and timelike axes.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
  const Eigen::Vector2d ev = es.eigenvalues();
  const Eigen::Matrix2d V = es.eigenvectors();
  const double st = std::sqrt(-ev(0)), ss = std::sqrt(ev(1));
  auto comps = [&](const Eigen::Vector2d& c) {
    return Eigen::Vector2d(ss * V.col(1).dot(c), st * V.col(0).dot(c));
  };
  const Eigen::Vector2d cp = comps({1, 0}), cq = comps({0, 1});
  auto position = [&](const Eigen::Vector2d& c) {
    const double a = c(0), b = c(1);
    const double r = a * a - b * b;
    if (std::abs(r) < 1e-14 * (a * a + b * b))
      throw BranchError("projected edge is lightlike");
    const Complex s = r > 0 ? Complex(std::sqrt(r), 0) : Complex(0, std::sqrt(-r));
    return Complex(0, -1) * std::log(Complex(a + b, 0) / s);
  };
  const Complex tp = position(cp), tq = position(cq);
  const double det = cp(0) * cq(1) - cp(1) * cq(0);
  const Complex d = det < 0 ? tq - tp : tp - tq;
  double re = std::fmod(d.real(), 2 * kPi);
  if (re < -1e-9) re += 2 * kPi;
  if (re > 2 * kPi - 1e-9) re -= 2 * kPi;
  return Complex(re, d.imag());
}

Simplex4::Simplex4(const std::array<EdgeVector, 5>& x, Signature sig, bool) : x_(x), sig_(sig) {
  Eigen::Matrix4d m;
  double scale = 1;
  for (int k = 0; k < 4; ++k) {
    m.col(k) = x_[k] - x_[4];
    scale *= std::max(1e-300, m.col(k).norm());
  }
  if (std::abs(m.determinant()) < 1e-12 * scale)
    throw DegenerateGeometry("4-simplex is degenerate");
}

Simplex4::Simplex4(const std::array<EdgeVector, 4>& edges, Signature sig)
    : Simplex4({edges[0], edges[1], edges[2], edges[3], EdgeVector::Zero()}, sig, true) {}

Simplex4 Simplex4::from_points(const std::array<EdgeVector, 5>& x, Signature sig) {
  return Simplex4(x, sig, true);
}

std::array<int, 3> Simplex4::triangle(FaceId f) const {
  std::array<int, 3> t{};
  int n = 0;
  for (int m = 0; m < 5; ++m)
    if (m != f.i && m != f.k) t[n++] = m;
  return t;
}

Bivector Simplex4::face_bivector(int i, int k) const {
  if (i == k || i < 0 || k < 0 || i > 4 || k > 4) throw ValidationError("bad face index");
  const auto t = triangle(FaceId{std::min(i, k), std::max(i, k)});
  int pos = 0;
  for (int m = 0; m < 5; ++m) {
    if (m == i) continue;
    if (m == k) break;
    ++pos;
  }
  const double o = ((i + pos) % 2 == 0) ? 1.0 : -1.0;
  Bivector b = bivector_from_edges(x_[t[1]] - x_[t[0]], x_[t[2]] - x_[t[0]], sig_);
  b.tensor *= o;
  b.plus *= o;
  b.minus *= o;
  return b;
}

Complex Simplex4::angle(FaceId f) const {
  const auto t = triangle(f);
  return hyperdihedral_angle({x_[t[0]], x_[t[1]], x_[t[2]]}, x_[f.i], x_[f.k], sig_);
}

Complex Simplex4::area(FaceId f) const { return regge::area(face_bivector(f)); }

double Simplex4::closure_residual() const {
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    ChiralVec sp = ChiralVec::Zero(), sm = ChiralVec::Zero();
    for (int k = 0; k < 5; ++k) {
      if (k == i) continue;
      const Bivector b = face_bivector(i, k);
      sp += b.plus;
      sm += b.minus;
    }
    worst = std::max({worst, sp.cwiseAbs().maxCoeff(), sm.cwiseAbs().maxCoeff()});
  }
  return worst;
}

std::array<EdgeVector, 5> refit_squared_lengths(const std::array<EdgeVector, 5>& x0,
                                                const std::array<double, 10>& target,
                                                Signature sig) {
  const Eigen::Matrix4d g = metric(sig);
  const auto& pairs = all_faces();
  std::array<EdgeVector, 5> x = x0;
  double scale = 0;
  for (double t : target) scale = std::max(scale, std::abs(t));
  for (int it = 0; it < 50; ++it) {
    Eigen::Matrix<double, 10, 1> r;
    Eigen::Matrix<double, 10, 16> J = Eigen::Matrix<double, 10, 16>::Zero();
    for (int n = 0; n < 10; ++n) {
      const auto [i, k] = pairs[n];
      const EdgeVector d = x[i] - x[k];
      r(n) = d.dot(g * d) - target[n];
      const EdgeVector grad = 2 * (g * d);
      if (i < 4) J.block<1, 4>(n, 4 * i) += grad.transpose();
      if (k < 4) J.block<1, 4>(n, 4 * k) -= grad.transpose();
    }
    if (r.cwiseAbs().maxCoeff() <= 1e-14 * scale) return x;
    const Eigen::Matrix<double, 16, 1> step = J.completeOrthogonalDecomposition().solve(r);
    for (int i = 0; i < 4; ++i) x[i] -= step.segment<4>(4 * i);
  }
  throw DegenerateGeometry("edge lengths are not realisable near the given simplex");
}

Simplex4 regular_simplex() {
  Eigen::Matrix4d gram = Eigen::Matrix4d::Constant(0.5);
  gram.diagonal().setOnes();
  const Eigen::Matrix4d L = gram.llt().matrixL();
  std::array<EdgeVector, 4> e;
  for (int k = 0; k < 4; ++k) e[k] = L.row(k).transpose();
  return Simplex4(e, Signature::Euclidean);
}

std::array<EdgeVector, 4> lattice_axes(double lambda, const EdgeVector& lapse, double scale) {
  if (!(lambda > -0.5 && lambda < 1.0))
    throw ValidationError("lambda must lie in (-1/2, 1)");
  Eigen::Matrix3d gram = Eigen::Matrix3d::Constant(lambda);
  gram.diagonal().setOnes();
  const Eigen::Matrix3d L = gram.llt().matrixL();
  std::array<EdgeVector, 4> axes;
  axes[0] = lapse;
  for (int i = 0; i < 3; ++i) {
    axes[i + 1] = EdgeVector::Zero();
    axes[i + 1].tail<3>() = scale * L.row(i).transpose();
  }
  return axes;
}

Simplex4 lapse_simplex(double lambda, const EdgeVector& lapse, double scale) {
  const auto ax = lattice_axes(lambda, lapse, scale);
  std::array<EdgeVector, 5> x;
  x[4] = EdgeVector::Zero();
  x[0] = ax[0];
  x[1] = x[0] + ax[1];
  x[2] = x[1] + ax[2];
  x[3] = x[2] + ax[3];
  return Simplex4::from_points(x);
}

double DihedralTable3d::min() const {
  return std::min({a2_43_1, a1_42_3, a4_31_2, a4_23_1, a3_41_2, a4_12_3});
}

DihedralTable3d dihedral_angles_3d(double lambda) {
  if (!(lambda > -0.5 && lambda < 1.0))
    throw ValidationError("lambda must lie in (-1/2, 1)");
  DihedralTable3d t;
  t.a2_43_1 = kPi / 3;
  t.a1_42_3 = kPi / 2;
  t.a4_31_2 = kPi / 2;
  t.a4_23_1 = std::acos(std::sqrt((1 + 2 * lambda) / (2 + 2 * lambda)));
  t.a3_41_2 = t.a4_23_1;
  t.a4_12_3 = kPi - 2 * t.a4_23_1;
  return t;
}

}  // namespace regge
