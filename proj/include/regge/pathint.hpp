#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "regge/geometry.hpp"

namespace regge {

// Modified Bessel functions from the representations
//   K0(l)  = int_0^{pi/2} exp(-l / sin f) df / sin f
//   K1(l)  = int_0^{pi/2} exp(-l / sin f) df / sin^2 f
//   Ki1(l) = int_0^{pi/2} exp(-l / sin f) df
// by tanh-sinh quadrature; l <= 0 throws DomainError.
double bessel_K0(double l);
double bessel_K1(double l);
double bessel_Ki1(double l);

// Same functions on the cut plane |arg l| < pi: the t = 1/sin f form
// int_1^inf exp(-l t) t^p / sqrt(t^2 - 1) dt on a contour rotated by -arg l,
// summed with the trapezoid rule (p = 0, 1, -1).
Complex bessel_K0(Complex l);
Complex bessel_K1(Complex l);
Complex bessel_Ki1(Complex l);

// The phi representation above integrated directly for complex l, Re l > 0.
Complex bessel_K1_phi(Complex l);
Complex bessel_Ki1_phi(Complex l);

// int exp(i a sh psi) dpsi evaluated on the shifted contour psi + i pi/2.
double model_integral(double a);
// Same integral done on the real line: Fejer (Cesaro) mean of the cutoff
// integral in x = sh psi up to x_max, Gauss-Kronrod per half period.
// Accuracy falls off quickly with a.
double model_integral_oscillatory(double a, double x_max = 1000.0);

// Exponent source of one chirality, m = -(i/2)(1 +- i/gamma) v, with an optional scalar part.
struct MSource {
  Complex m0 = 0;
  ChiralVec mvec = ChiralVec::Zero();

  // 2 m o m = mvec.mvec + m0^2
  Complex effective_square() const;
  static MSource from_chiral(const ChiralVec& v, double gamma, Chirality c);
};

// K1(sqrt(m^2)) / (pi sqrt(m^2)) for one chirality.
Complex n0_chiral_closed(const MSource& m);
// (2 pi / (4 pi^2)) int d eta int_1^inf dT ch^2 eta exp(-sqrt(m^2) ch eta T), by nested exp-sinh.
Complex n0_chiral_quadrature(const MSource& m);

// Single-triangle amplitudes, product over both chiralities.
Complex n0_su2_closed(const Bivector& v, double gamma);
Complex n0_so3_closed(const Bivector& v, double gamma);
Complex n0_deformed_quadrature(const Bivector& v, double gamma);
// The Ki1 form with Ki1 taken from its phi representation.
Complex n0_so3_quadrature(const Bivector& v, double gamma);

// Bivector whose chiral square is v2 (negative: spacelike, positive: timelike).
Bivector bivector_with_square(double v2);

// Least-squares fit log y = a + b x + c ln x; returns b.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// (64 pi)^2 gamma^6 / (1 + gamma^2)^3; gamma = inf gives (64 pi)^2.
double linearized_delta_prefactor(double gamma);

// Gaussian-regulated Fourier integral of one vector component,
//   F(a, b) = int dx dy exp((i/2)[(a - b/gamma) x - (b + a/gamma) y]) exp(-eps^2 (x^2 + y^2) / 2),
// integrated numerically over (a, b).
struct DeltaMass {
  double component = 0;  // (a, b)-mass of F for one component
  double total = 0;      // three components, both chiral measures, per delta(+v) delta(-v)
  double analytic = 0;   // 1024 pi^2 gamma^6 / (1 + gamma^2)^3
};
DeltaMass mollified_delta_mass(double gamma, double eps);

struct MCEstimate {
  Complex mean = 0;
  double stderr_ = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool converged = true;  // stderr within the requested relative tolerance

  std::string to_json() const;
};

std::uint64_t splitmix64(std::uint64_t x);

// Chiral area vectors of the degenerate configuration: v1, v2, v3 and v4
// (closure reads v1 + v2 + v3 - v4 = 0).
struct DegenerateConfig {
  std::array<ChiralVec, 4> plus;
  std::array<ChiralVec, 4> minus;

  const std::array<ChiralVec, 4>& chiral(Chirality c) const {
    return c == Chirality::Plus ? plus : minus;
  }
  // Faces of a simplex with a short lapse edge (40): v_a = v(0,a), v4 = -v(0,4).
  static DegenerateConfig from_simplex(const Simplex4& s);
  // Spatial tetrahedron of a lapse simplex with a vanishing lapse.
  static DegenerateConfig spatial_tetrahedron(double scale = 1.0);
  DegenerateConfig scaled(double t) const;
  DegenerateConfig with_v4(const ChiralVec& plus4, const ChiralVec& minus4) const;
};

// Importance-sampled estimate of one chirality factor of the degenerate amplitude.
// eta is drawn from a normal proposal, ch zeta - 1 from an equal mixture of
// exponentials at the integrand's rate and five times it, chi uniformly.
// The kernel is averaged over 16 shifted copies of the third face's chi and
// 2 of the second's; when z^4 (v4~)^2 has a root near |z| = 1 its pole part is
// replaced by the exact mean over chi from residues. Samples run in chunks of
// 2^16 seeded by splitmix64(splitmix64(seed) + chunk).
MCEstimate n_degenerate_mc(const DegenerateConfig& cfg, double gamma, std::uint64_t n_samples,
                           std::uint64_t seed, Chirality c = Chirality::Plus,
                           double rel_tolerance = 0.05);
// Same sampler with the v4 kernel replaced by 1: estimates the product of the
// three single-face factors K1(c_a) / (pi c_a).
MCEstimate n_source_product_mc(const DegenerateConfig& cfg, double gamma, std::uint64_t n_samples,
                               std::uint64_t seed, Chirality c = Chirality::Plus);

// Mean of a test function of (R1..R4) sampled as Omega_0^-1 Omega_a from five
// Haar rotors and sampled directly.
struct HaarFactorization {
  double mean_composed = 0, stderr_composed = 0;
  double mean_direct = 0, stderr_direct = 0;
};
HaarFactorization haar_factorization_check(std::uint64_t n_samples, std::uint64_t seed);

}  // namespace regge
