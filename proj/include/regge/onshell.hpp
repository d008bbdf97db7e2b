#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "regge/action.hpp"

namespace regge {

// Stationary curvatures of one chirality: R_a rotates by 2 pi - 2 alpha_0a
// around sign_a * n_a.
struct StationaryCurvatures {
  std::array<Rotor, 4> r;               // R_1..R_4
  std::array<int, 4> axis_sign{1, 1, 1, 1};
  std::array<int, 10> area_sign{};      // per-face sign of the on-shell arcsin, 0 where unclassified
  bool classified = false;              // every face matched the on-shell pattern
};

// Exhaustive search over the 16 axis signs; forced signs skip the search.
StationaryCurvatures stationary_curvatures(const Simplex4& s, Chirality c,
                                           std::optional<std::array<int, 4>> forced = std::nullopt);

// Omega_0 = identity, Omega_a = R_a.
BisimplexConnections connections_from_curvatures(const std::array<Rotor, 4>& plus,
                                                 const std::array<Rotor, 4>& minus);

struct ActionSetup {
  Representation rep = Representation::SU2;
  double gamma = 1.0;
  BranchSector plus;
  BranchSector minus;

  Complex evaluate(const Simplex4& s, const BisimplexConnections& c) const;
};

// Largest |central difference| of the combined action over the 24 real
// tangent directions Omega_a -> Omega_a exp(h e_k), a = 1..4, both chiralities.
double stationarity_residual(const Simplex4& s, const BisimplexConnections& c,
                             const ActionSetup& setup, double step = 1e-5);
// Same for the simultaneous gauge direction Omega_i -> exp(h e_k) Omega_i.
double gauge_residual(const Simplex4& s, const BisimplexConnections& c, const ActionSetup& setup,
                      double step = 1e-5);

struct CertifyOptions {
  Representation rep = Representation::SU2;
  double gamma = 1.0;
  double gap_tolerance = 1e-8;
  double residual_tolerance = 1e-5;
  double step = 1e-5;
  bool refine = true;
  int max_iterations = 200;
  double max_drift = 1e-3;
  std::optional<std::array<int, 4>> forced_signs;
};

struct CertificationReport {
  int simplex_id = 0;
  Representation rep = Representation::SU2;
  double gap = 0;       // max over chiralities of |S_c - S_regge,c / 2|, signed areas
  double gap_plus = 0;
  double gap_minus = 0;
  double residual = 0;
  double gauge = 0;
  std::array<int, 4> signs_plus{};
  std::array<int, 4> signs_minus{};
  std::array<int, 10> area_sign_plus{};
  std::array<int, 10> area_sign_minus{};
  int iterations = 0;
  bool certified = false;
  BisimplexConnections connections;

  std::string to_json() const;
};

// Lapse simplex with vertices 0..3 moved by amplitude * N(0,1) in each
// component, the time component scaled by the lapse's time extent.
Simplex4 perturbed_lapse_simplex(double lambda, const EdgeVector& lapse, double amplitude,
                                 std::mt19937_64& rng);

// Lapse simplex with every squared edge length shifted by
// amplitude * |lapse^2| * N(0,1), vertices refitted to the new lengths.
Simplex4 length_perturbed_lapse_simplex(double lambda, const EdgeVector& lapse, double amplitude,
                                        std::mt19937_64& rng);

struct NamedSimplex {
  std::string name;
  Simplex4 simplex;
};

// Regular simplex, flat lapse simplices at lambda = -1/3, 0, 0.2 and
// `perturbed` 5% perturbations of the lambda = -1/3 one.
std::vector<NamedSimplex> certification_suite(std::uint64_t seed, int perturbed = 20);

CertificationReport certify(const Simplex4& s, const CertifyOptions& opt = {}, int simplex_id = 0);

}  // namespace regge
