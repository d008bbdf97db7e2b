#include "regge/pathint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
const Complex kI(0, 1);

namespace bq = boost::math::quadrature;

// exp(l) * int_0^{pi/2} exp(-l / sin f) / sin^p f df
double phi_integral(double l, int p) {
  if (!(l > 0) || !std::isfinite(l)) throw DomainError("Bessel argument must be positive");
  thread_local bq::tanh_sinh<double> ts;
  auto f = [&](double x) {
    const double s = std::sin(x);
    if (s <= 0) return 0.0;
    const double x_exp = l * (1 / s - 1);
    if (x_exp > 700) return 0.0;
    return std::exp(-x_exp) / std::pow(s, p);
  };
  return ts.integrate(f, 0.0, kPi / 2, 1e-14);
}

// int_1^inf exp(-l t) t^p / sqrt(t^2 - 1) dt on t = 1 + sigma^2 exp(-i arg l)
Complex rotated_integral(Complex l, int p) {
  const double r = std::abs(l);
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("Bessel argument must be nonzero");
  const double th = std::arg(l);
  if (std::abs(th) >= kPi - 1e-12) throw BranchError("Bessel argument on the negative real axis");
  const Complex rot = std::exp(-kI * th);
  const Complex half = std::exp(-0.5 * kI * th);
  const double h = std::min(0.25, 0.12 * std::sqrt(r));
  const double x_max = 6.2;
  auto g = [&](double x) {
    const double s = x * x / r;
    const Complex t = 1.0 + s * rot;
    Complex val = 2.0 * half / std::sqrt(2.0 + s * rot);
    if (p == 1) val *= t;
    if (p == -1) val /= t;
    return std::exp(-x * x) * val;
  };
  Complex sum = 0.5 * g(0.0);
  for (int k = 1; k * h <= x_max; ++k) sum += g(k * h);
  return std::exp(-l) / std::sqrt(r) * h * sum;
}

Complex phi_integral_complex(Complex l, int p) {
  if (!(l.real() > 0)) throw DomainError("phi representation needs Re l > 0");
  thread_local bq::tanh_sinh<double> ts;
  auto part = [&](bool imag) {
    return ts.integrate(
        [&, imag](double x) {
          const double s = std::sin(x);
          if (s <= 0 || l.real() * (1 / s - 1) > 700) return 0.0;
          const Complex e = std::exp(-l * (1 / s - 1)) / std::pow(s, p);
          return imag ? e.imag() : e.real();
        },
        0.0, kPi / 2, 1e-13);
  };
  return std::exp(-l) * Complex(part(false), part(true));
}

Complex chiral_coupling(double gamma, Chirality c) {
  // 1 +- i/gamma
  const double ig = std::isinf(gamma) ? 0.0 : 1.0 / gamma;
  return Complex(1.0, sign_of(c) * ig);
}

void check_gamma(double gamma) {
  if (gamma == 0 || std::isnan(gamma)) throw DomainError("gamma must be nonzero");
}

// sqrt(m^2) off the cut, Re > 0
Complex source_root(const MSource& m) {
  const Complex sq = m.effective_square();
  if (std::abs(sq) < 1e-300) throw DomainError("vanishing source");
  if (std::abs(sq.imag()) <= 1e-14 * std::abs(sq) && sq.real() < 0)
    throw BranchError("source square on the negative real axis");
  return std::sqrt(sq);
}

}  // namespace

double bessel_K0(double l) { return std::exp(-l) * phi_integral(l, 1); }
double bessel_K1(double l) { return std::exp(-l) * phi_integral(l, 2); }
double bessel_Ki1(double l) { return std::exp(-l) * phi_integral(l, 0); }

Complex bessel_K0(Complex l) { return rotated_integral(l, 0); }
Complex bessel_K1(Complex l) { return rotated_integral(l, 1); }
Complex bessel_Ki1(Complex l) { return rotated_integral(l, -1); }

Complex bessel_K1_phi(Complex l) { return phi_integral_complex(l, 2); }
Complex bessel_Ki1_phi(Complex l) { return phi_integral_complex(l, 0); }

double model_integral(double a) {
  if (!(a > 0)) throw DomainError("model integral needs a > 0");
  thread_local bq::exp_sinh<double> es;
  // exp(i a sh(psi + i pi/2)) = exp(-a ch psi), even in psi
  return 2 * es.integrate([a](double psi) { return std::exp(-a * std::cosh(psi)); }, 0.0,
                          std::numeric_limits<double>::infinity(), 1e-14);
}

double model_integral_oscillatory(double a, double x_max) {
  if (!(a > 0)) throw DomainError("model integral needs a > 0");
  if (!(x_max > 0)) throw ValidationError("cutoff must be positive");
  const double period = kPi / a;
  auto f = [&](double x) { return (1 - x / x_max) * std::cos(a * x) / std::sqrt(1 + x * x); };
  double sum = 0;
  for (double lo = 0; lo < x_max; lo += period)
    sum += bq::gauss_kronrod<double, 31>::integrate(f, lo, std::min(lo + period, x_max), 5, 1e-13);
  return 2 * sum;
}

Complex MSource::effective_square() const { return square(mvec) + m0 * m0; }

MSource MSource::from_chiral(const ChiralVec& v, double gamma, Chirality c) {
  check_gamma(gamma);
  MSource m;
  m.mvec = -0.5 * kI * chiral_coupling(gamma, c) * v;
  return m;
}

Complex n0_chiral_closed(const MSource& m) {
  const Complex c = source_root(m);
  return bessel_K1(c) / (kPi * c);
}

Complex n0_chiral_quadrature(const MSource& m) {
  const Complex c = source_root(m);
  if (!(c.real() > 0)) throw BranchError("non-convergent source");
  thread_local bq::exp_sinh<double> es;
  const double inf = std::numeric_limits<double>::infinity();
  auto outer = [&](bool imag) {
    return es.integrate(
        [&](double eta) {
          const double ch = std::cosh(eta);
          // exponent shifted by c ch eta so the inner integrand is O(1) at T = 1
          const Complex shift = std::exp(-c * ch);
          auto inner = [&](double s) {
            const Complex e = ch * ch * std::exp(-c * ch * s) * shift;
            return imag ? e.imag() : e.real();
          };
          if (std::abs(shift) < 1e-300) return 0.0;
          return es.integrate(inner, 0.0, inf, 1e-13);
        },
        0.0, inf, 1e-12);
  };
  // even in eta; chi gives 2 pi
  return 2.0 * (2 * kPi / (4 * kPi * kPi)) * Complex(outer(false), outer(true));
}

Complex n0_su2_closed(const Bivector& v, double gamma) {
  return n0_chiral_closed(MSource::from_chiral(v.plus, gamma, Chirality::Plus)) *
         n0_chiral_closed(MSource::from_chiral(v.minus, gamma, Chirality::Minus));
}

Complex n0_so3_closed(const Bivector& v, double gamma) {
  Complex out = 1;
  for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
    const Complex root = source_root(MSource::from_chiral(v.chiral(c), gamma, c));
    out *= bessel_Ki1(0.5 * root) / (kPi * root);
  }
  return out;
}

Complex n0_deformed_quadrature(const Bivector& v, double gamma) {
  return n0_chiral_quadrature(MSource::from_chiral(v.plus, gamma, Chirality::Plus)) *
         n0_chiral_quadrature(MSource::from_chiral(v.minus, gamma, Chirality::Minus));
}

Complex n0_so3_quadrature(const Bivector& v, double gamma) {
  Complex out = 1;
  for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
    const Complex root = source_root(MSource::from_chiral(v.chiral(c), gamma, c));
    out *= bessel_Ki1_phi(0.5 * root) / (kPi * root);
  }
  return out;
}

Bivector bivector_with_square(double v2) {
  if (v2 == 0 || !std::isfinite(v2)) throw ValidationError("bivector square must be nonzero");
  // spatial triangle in the xy plane, or a triangle spanned by t and x
  const bool space = v2 < 0;
  auto make = [&](double s) {
    const EdgeVector l1 = space ? EdgeVector(0, s, 0, 0) : EdgeVector(s, 0, 0, 0);
    const EdgeVector l2 = space ? EdgeVector(0, 0, s, 0) : EdgeVector(0, s, 0, 0);
    return bivector_from_edges(l1, l2);
  };
  const double unit = std::abs(square(make(1.0).plus));
  return make(std::pow(std::abs(v2) / unit, 0.25));
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw ValidationError("need at least three points");
  Eigen::MatrixXd a(x.size(), 3);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw DomainError("log fit needs positive data");
    a.row(i) << 1.0, x[i], std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)(1);
}

double linearized_delta_prefactor(double gamma) {
  check_gamma(gamma);
  const double base = 64 * kPi * 64 * kPi;
  if (std::isinf(gamma)) return base;
  const double g2 = gamma * gamma;
  return base * g2 * g2 * g2 / std::pow(1 + g2, 3);
}

DeltaMass mollified_delta_mass(double gamma, double eps) {
  check_gamma(gamma);
  if (!(eps > 0)) throw ValidationError("regulator width must be positive");
  const double ig = std::isinf(gamma) ? 0.0 : 1.0 / gamma;
  // int exp(i p x - eps^2 x^2 / 2) dx
  auto fourier = [eps](double p) {
    auto f = [&](double x) { return std::cos(p * x) * std::exp(-0.5 * eps * eps * x * x); };
    return 2 * bq::gauss_kronrod<double, 61>::integrate(f, 0.0, 9.0 / eps, 8, 1e-12);
  };
  const double box = 20 * eps;
  auto over_b = [&](double a) {
    return bq::gauss_kronrod<double, 31>::integrate(
        [&](double b) { return fourier(0.5 * (a - b * ig)) * fourier(0.5 * (b + a * ig)); }, -box,
        box, 6, 1e-10);
  };
  DeltaMass out;
  out.component = bq::gauss_kronrod<double, 31>::integrate(over_b, -box, box, 6, 1e-10);
  // d+r d-r = 2 dx dy and delta(a) delta(b) = 2 delta(+v) delta(-v), per component,
  // with the 1/(16 pi^2)^2 measure normalisation
  out.total = std::pow(4 * out.component, 3) / std::pow(16 * kPi * kPi, 2);
  const double g2 = std::isinf(gamma) ? 1.0 : gamma * gamma;
  const double frac = std::isinf(gamma) ? 1.0 : g2 / (1 + g2);
  out.analytic = 1024 * kPi * kPi * std::pow(frac, 3);
  return out;
}

std::string MCEstimate::to_json() const {
  nlohmann::json j;
  j["mean_re"] = mean.real();
  j["mean_im"] = mean.imag();
  j["stderr"] = stderr_;
  j["n"] = n;
  j["seed"] = seed;
  return j.dump();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

DegenerateConfig DegenerateConfig::from_simplex(const Simplex4& s) {
  DegenerateConfig cfg;
  for (int a = 0; a < 3; ++a) {
    const Bivector b = s.face_bivector(0, a + 1);
    cfg.plus[a] = b.plus;
    cfg.minus[a] = b.minus;
  }
  const Bivector b4 = s.face_bivector(0, 4);
  cfg.plus[3] = -b4.plus;
  cfg.minus[3] = -b4.minus;
  return cfg;
}

DegenerateConfig DegenerateConfig::spatial_tetrahedron(double scale) {
  return from_simplex(lapse_simplex(0.0, EdgeVector(1e-9, 0, 0, 0), scale));
}

DegenerateConfig DegenerateConfig::scaled(double t) const {
  DegenerateConfig out = *this;
  for (int a = 0; a < 4; ++a) {
    out.plus[a] *= t;
    out.minus[a] *= t;
  }
  return out;
}

DegenerateConfig DegenerateConfig::with_v4(const ChiralVec& plus4, const ChiralVec& minus4) const {
  DegenerateConfig out = *this;
  out.plus[3] = plus4;
  out.minus[3] = minus4;
  return out;
}

namespace {

// Fourier coefficients c_{-4..4} of a trigonometric polynomial Q of degree <= 4
// from its values at offset + 2 pi j / 16.
std::array<Complex, 9> trig_coefficients(const std::array<Complex, 16>& q, double offset) {
  static const std::array<Complex, 16> unit = [] {
    std::array<Complex, 16> u;
    for (int j = 0; j < 16; ++j) u[j] = std::polar(1.0, -2 * kPi * j / 16.0);
    return u;
  }();
  std::array<Complex, 9> p{};
  for (int m = -4; m <= 4; ++m) {
    Complex c = 0;
    for (int j = 0; j < 16; ++j) c += q[j] * unit[((m * j) % 16 + 16) % 16];
    p[m + 4] = c * std::polar(1.0, -m * offset) / 16.0;
  }
  return p;
}

// Mean over the circle of 1 / Q: the residues of z^3 / P(z), P(z) = z^4 Q =
// sum p[d] z^d, inside the unit circle. gap is the smallest distance of a root
// from the circle.
struct CircleMean {
  Complex value = 0;
  double gap = 0;
};

CircleMean inverse_circle_mean(const std::array<Complex, 9>& p) {
  double scale = 0;
  for (const Complex& x : p) scale = std::max(scale, std::abs(x));
  const double tol = 1e-13 * scale;
  int hi = 8, lo = 0;
  while (hi > 0 && std::abs(p[hi]) <= tol) --hi;
  while (lo < hi && std::abs(p[lo]) <= tol) ++lo;
  // P = z^lo R with R(0) != 0; integrand z^(3 - lo) / R
  const int n = hi - lo;
  std::vector<Complex> r(p.begin() + lo, p.begin() + hi + 1);
  CircleMean out;
  out.gap = std::numeric_limits<double>::infinity();
  if (lo >= 4) {
    // pole at the origin: Taylor coefficient of 1 / R of order lo - 4
    std::vector<Complex> b(lo - 3);
    for (int k = 0; k < lo - 3; ++k) {
      Complex acc = k == 0 ? Complex(1) : Complex(0);
      for (int i = 1; i <= std::min(k, n); ++i) acc -= r[i] * b[k - i];
      b[k] = acc / r[0];
    }
    out.value += b[lo - 4];
  }
  if (n == 0) return out;
  Eigen::VectorXcd roots;
  if (n == 8) {
    Eigen::Matrix<Complex, 8, 8> comp = Eigen::Matrix<Complex, 8, 8>::Zero();
    for (int d = 0; d < 8; ++d) comp(0, d) = -r[7 - d] / r[8];
    for (int d = 1; d < 8; ++d) comp(d, d - 1) = 1.0;
    roots = Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 8, 8>>(comp, false).eigenvalues();
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int d = 0; d < n; ++d) comp(0, d) = -r[n - 1 - d] / r[n];
    for (int d = 1; d < n; ++d) comp(d, d - 1) = 1.0;
    roots = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(comp, false).eigenvalues();
  }
  for (int k = 0; k < n; ++k) {
    const Complex z = roots(k);
    out.gap = std::min(out.gap, std::abs(std::abs(z) - 1.0));
    if (std::abs(z) >= 1.0) continue;
    Complex dr = 0;
    for (int d = n; d >= 1; --d) dr = dr * z + double(d) * r[d];
    out.value += std::pow(z, 3 - lo) / dr;
  }
  return out;
}

MCEstimate degenerate_mc(const DegenerateConfig& cfg, double gamma, std::uint64_t n_samples,
                         std::uint64_t seed, Chirality c, bool with_kernel) {
  check_gamma(gamma);
  if (n_samples < 2) throw ValidationError("need at least two samples");
  const Complex k = chiral_coupling(gamma, c);
  const auto& v = cfg.chiral(c);

  struct Face {
    ChiralVec m, v, n0, e1, e2;
    Complex c;
    double width;
  };
  // Rotated face vector R v for one draw of (eta, zeta), as a function of chi.
  struct Draw {
    const Face* f = nullptr;
    double ch = 1, sh = 0, t = 1, shz = 0;
    ChiralVec operator()(double x) const {
      Rotor rot;
      rot.w = -kI * sh;
      rot.u = ch * (t * f->n0 + kI * shz * (std::cos(x) * f->e1 + std::sin(x) * f->e2));
      return to_adjoint(rot) * f->v;
    }
  };
  std::array<Face, 3> faces;
  for (int a = 0; a < 3; ++a) {
    Face& f = faces[a];
    f.v = v[a];
    f.m = -0.5 * kI * k * v[a];
    MSource src;
    src.mvec = f.m;
    f.c = source_root(src);
    if (!(f.c.real() > 0)) throw BranchError("non-convergent source");
    f.n0 = f.m / f.c;
    // bilinear-orthonormal frame around n0
    int j0 = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(f.n0(j)) < std::abs(f.n0(j0))) j0 = j;
    const ChiralVec r = ChiralVec::Unit(j0);
    const ChiralVec e1 = r - dot(r, f.n0) * f.n0;
    if (std::abs(square(e1)) < 1e-8) throw DegenerateGeometry("null source direction");
    f.e1 = e1 / std::sqrt(square(e1));
    f.e2 = cross(f.n0, f.e1);
    f.width = std::clamp(1.0 / std::sqrt(f.c.real()), 0.2, 3.0);
  }
  const ChiralVec v4 = v[3];
  const Complex coupling4 = k * k;  // (1 +- i/gamma)^2 = -(1/gamma -+ i)^2

  // proposal and variance-reduction settings
  const int kChiCopies = 2;         // systematic copies of the second face's chi
  const double kControlMargin = 0.1;
  const double kControlGap = 0.2;   // root distance from the circle that triggers the pole mean
  const double kKernelCut = 50;     // K1 below 1e-21 of its small-argument size is dropped
  const double kMixT = 0.5, kFastT = 5;  // share and rate factor of the fast ch zeta - 1 component

  const std::uint64_t chunk = 1 << 16;
  double sum_re = 0, sum_im = 0, sq_re = 0, sq_im = 0;
  std::uint64_t done = 0;
  for (std::uint64_t ci = 0; done < n_samples; ++ci) {
    std::mt19937_64 rng(splitmix64(splitmix64(seed) + ci));
    std::normal_distribution<double> normal;
    std::exponential_distribution<double> expo;
    std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint64_t todo = std::min(chunk, n_samples - done);
    for (std::uint64_t s = 0; s < todo; ++s) {
      Complex weight = 1;
      std::array<Draw, 3> draw;
      std::array<double, 3> chi;
      for (int a = 0; a < 3; ++a) {
        const Face& f = faces[a];
        // ch zeta - 1 from a mixture of the integrand's rate and a faster one,
        // which puts more samples near the closure point at zeta = 0
        const double eta = f.width * normal(rng);
        const double ch = std::cosh(eta), sh = std::sinh(eta);
        const double rate = f.c.real() * ch;
        const double dt = expo(rng) / (unit(rng) < kMixT ? kFastT * rate : rate);
        const double t = 1 + dt;
        chi[a] = uni(rng);
        draw[a] = Draw{&f, ch, sh, t, std::sqrt(dt * (t + 1))};
        const double phi = std::exp(-0.5 * eta * eta / (f.width * f.width)) /
                           (f.width * std::sqrt(2 * kPi));
        // T density over exp(-rate dt)
        const double g = rate * ((1 - kMixT) + kMixT * kFastT * std::exp(-(kFastT - 1) * rate * dt));
        // Haar weight ch^2 eta / (4 pi^2) over the sampling density; m.u does not depend on chi
        const Complex mu = dot(f.m, ChiralVec(ch * t * f.n0));
        weight *= ch * ch * std::exp(-mu + rate * dt) / (2 * kPi * phi * g);
      }
      Complex kern = 1;
      if (with_kernel) {
        // chi of the second face: kChiCopies shifted copies; chi of the third: 16.
        const ChiralVec head = v4 - draw[0](chi[0]);
        Complex acc = 0;
        for (int j2 = 0; j2 < kChiCopies; ++j2) {
          const ChiralVec base = head - draw[1](chi[1] + 2 * kPi * j2 / kChiCopies);
          std::array<Complex, 16> qs;
          Complex mean_kern = 0, mean_sing = 0;
          for (int j = 0; j < 16; ++j) {
            qs[j] = square(ChiralVec(base - draw[2](chi[2] + 2 * kPi * j / 16.0)));
            const Complex root = 0.5 * std::sqrt(-coupling4 * qs[j]);
            // K1 below double precision of the result is skipped; root = 0 has measure zero
            if (std::abs(root) > 1e-12 && root.real() < kKernelCut)
              mean_kern += bessel_K1(root) / (kPi * root);
            mean_sing += 1.0 / qs[j];
          }
          Complex k3 = mean_kern / 16.0;
          // With a root of z^4 Q near the circle, the pole part -4 / (pi k^2 Q)
          // of the kernel is replaced by its exact mean over chi. The switch
          // depends on |c_m| and the roots only, which do not depend on chi.
          const std::array<Complex, 9> cf = trig_coefficients(qs, chi[2]);
          double rest = 0;
          for (int m = 0; m < 9; ++m)
            if (m != 4) rest += std::abs(cf[m]);
          if (std::abs(cf[4]) <= (1 + kControlMargin) * rest) {
            const CircleMean cm = inverse_circle_mean(cf);
            if (cm.gap < kControlGap) k3 += -4.0 / (kPi * coupling4) * (cm.value - mean_sing / 16.0);
          }
          acc += k3;
        }
        kern = acc / double(kChiCopies);
      }
      const Complex val = weight * kern;
      sum_re += val.real();
      sum_im += val.imag();
      sq_re += val.real() * val.real();
      sq_im += val.imag() * val.imag();
    }
    done += todo;
  }
  MCEstimate est;
  const double n = double(n_samples);
  est.mean = Complex(sum_re / n, sum_im / n);
  const double var = (sq_re / n - std::norm(Complex(sum_re / n, 0))) +
                     (sq_im / n - std::norm(Complex(sum_im / n, 0)));
  est.stderr_ = std::sqrt(std::max(0.0, var) / (n - 1));
  est.n = n_samples;
  est.seed = seed;
  return est;
}

}  // namespace

MCEstimate n_degenerate_mc(const DegenerateConfig& cfg, double gamma, std::uint64_t n_samples,
                           std::uint64_t seed, Chirality c, double rel_tolerance) {
  MCEstimate est = degenerate_mc(cfg, gamma, n_samples, seed, c, true);
  est.converged = est.stderr_ <= rel_tolerance * std::abs(est.mean);
  return est;
}

MCEstimate n_source_product_mc(const DegenerateConfig& cfg, double gamma, std::uint64_t n_samples,
                               std::uint64_t seed, Chirality c) {
  return degenerate_mc(cfg, gamma, n_samples, seed, c, false);
}

HaarFactorization haar_factorization_check(std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw ValidationError("need at least two samples");
  auto f = [](const std::array<Rotor, 4>& r) {
    double s = 0;
    for (const Rotor& q : r) s += std::norm(to_adjoint(q)(0, 0));
    const Complex x = r[0].w * r[1].w + dot(r[0].u, r[2].u);
    return s + std::norm(x) + (r[3].u(2) * r[1].u(0)).real();
  };
  auto run = [&](bool composed, std::uint64_t root, double& mean, double& err) {
    std::mt19937_64 rng(splitmix64(root));
    double sum = 0, sq = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
      std::array<Rotor, 4> r;
      if (composed) {
        const Rotor om0 = inverse(sample_haar(rng));
        for (Rotor& q : r) q = compose(om0, sample_haar(rng));
      } else {
        for (Rotor& q : r) q = sample_haar(rng);
      }
      const double x = f(r);
      sum += x;
      sq += x * x;
    }
    const double n = double(n_samples);
    mean = sum / n;
    err = std::sqrt(std::max(0.0, sq / n - mean * mean) / (n - 1));
  };
  HaarFactorization out;
  run(true, seed, out.mean_composed, out.stderr_composed);
  run(false, seed + 1, out.mean_direct, out.stderr_direct);
  return out;
}

}  // namespace regge
