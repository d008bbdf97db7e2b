// Acceptance run: one PASS/FAIL line per criterion with its runtime and budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "regge/action.hpp"
#include "regge/lattice.hpp"
#include "regge/onshell.hpp"
#include "regge/pathint.hpp"

using namespace regge;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const EdgeVector kLapse(0.1, 0.01, 0.02, 0.03);

Outcome algebra_identities() {
  const SigmaIdentityReport r = sigma_identities_check(1000, 1);
  return {r.worst() < 1e-10 && r.cases == 1000, fmt("worst %.2e over %d cases", r.worst(), r.cases)};
}

Outcome haar() {
  const double err = std::abs(haar_normalization() - 1);
  return {err < 1e-10, fmt("|mass - 1| = %.2e", err)};
}

Outcome closure() {
  const Lattice lat{LatticeConfig{}};
  double worst = 0;
  for (int s = 0; s < int(lat.simplices().size()); ++s)
    worst = std::max(worst, lat.geometry(s).closure_residual());
  const int n = int(lat.simplices().size());
  return {worst < 1e-12 && n == 384, fmt("%d simplices, worst %.2e", n, worst)};
}

Outcome flatness() {
  const Lattice flat{LatticeConfig{}};
  const double s0 = std::abs(regge_total(flat));
  Lattice bumpy{LatticeConfig{}};
  bumpy.perturb_lengths(0.05, 7);
  const Complex total = regge_total(bumpy);
  const double diff = std::abs(total - decompose_total(bumpy));
  return {s0 < 1e-8 && diff < 1e-10 && std::abs(total) > 1e-6,
          fmt("flat |S| = %.2e, perturbed |S| = %.3e, |regge - decomposed| = %.2e", s0, std::abs(total), diff)};
}

Outcome angles() {
  const double m1 = dihedral_angles_3d(-1.0 / 3.0).min();
  const double m0 = dihedral_angles_3d(0.0).min();
  const double e1 = std::abs(m1 - pi / 3), e0 = std::abs(m0 - pi / 4);
  return {e1 < 1e-12 && e0 < 1e-12, fmt("|min - pi/3| = %.1e, |min - pi/4| = %.1e", e1, e0)};
}

Outcome onshell() {
  double gap = 0, residual = 0;
  int certified = 0, total = 0;
  for (Representation rep : {Representation::SU2, Representation::SO3}) {
    CertifyOptions opt;
    opt.rep = rep;
    int id = 0;
    for (const NamedSimplex& ns : certification_suite(1, 20)) {
      const CertificationReport r = certify(ns.simplex, opt, id++);
      ++total;
      certified += r.certified && r.gap < 1e-8 && r.residual < 1e-5;
      gap = std::max(gap, r.gap);
      residual = std::max(residual, r.residual);
    }
  }
  return {certified == total && total == 48,
          fmt("%d/%d certified, worst gap %.2e, worst residual %.2e", certified, total, gap, residual)};
}

Outcome branches() {
  std::mt19937_64 rng(11);
  double worst = 0;
  int ok = 0, violations = 0;
  for (int n = 0; n < 100; ++n) {
    const Simplex4 s = length_perturbed_lapse_simplex(-1.0 / 3.0, kLapse, 0.05, rng);
    bool good = true;
    for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
      try {
        const auto res = resolve_branch(s, c);
        for (int f = 0; f < 10; ++f) {
          const Complex alpha = chiral_angle(s, all_faces()[f], c);
          const double e = std::max(std::abs(res[f].so3 - alpha), std::abs(res[f].su2 - alpha));
          worst = std::max(worst, e);
          good = good && e < 1e-8;
        }
      } catch (const SectorViolation&) {
        good = false;
        ++violations;
      }
    }
    ok += good;
  }
  double sector = 0;
  for (int m : {4, 6})
    for (AngleType t : {AngleType::Real, AngleType::HalfPiPlusImaginary})
      sector = std::max(sector, std::abs(sector_constant(t, m) - (pi / m - pi / 4)));
  const Lattice lat{LatticeConfig{}};
  for (const auto& e : sector_constants(lat))
    if (e.type != AngleType::Imaginary)
      sector = std::max(sector, std::abs(e.constant - (pi / e.multiplicity - pi / 4)));
  return {ok == 100 && sector < 1e-15,
          fmt("%d/100 configs, worst %.2e, %d sector violations, constants err %.1e", ok, worst, violations,
              sector)};
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = lo + (hi - lo) * k / (n - 1);
  return x;
}

double slope_of(const std::function<double(double)>& f) {
  const std::vector<double> x = grid(5, 20, 50);
  std::vector<double> y;
  for (double a : x) y.push_back(f(a));
  return fit_log_slope(x, y);
}

Outcome model() {
  double err = 0;
  for (double a : {1.0, 5.0, 10.0}) err = std::max(err, std::abs(model_integral(a) - 2 * std::cyl_bessel_k(0.0, a)));
  const double slope = slope_of(model_integral);
  return {err < 1e-8 && std::abs(slope + 1) < 0.02, fmt("max |I - 2K0| = %.2e, slope %.4f", err, slope)};
}

Outcome n0_grid() {
  double worst = 0;
  for (double gamma : {0.5, 1.0, 3.0})
    for (double v2 : {-4.0, -1.0, 2.5}) {
      const Bivector b = bivector_with_square(v2);
      worst = std::max(worst, std::abs(n0_deformed_quadrature(b, gamma) / n0_su2_closed(b, gamma) - 1.0));
      worst = std::max(worst, std::abs(n0_so3_quadrature(b, gamma) / n0_so3_closed(b, gamma) - 1.0));
    }
  return {worst < 1e-6, fmt("worst relative error %.2e", worst)};
}

Outcome slopes() {
  const double gamma = 2.0;
  const double space = slope_of([](double a) { return std::abs(n0_so3_closed(bivector_with_square(-a * a), 1.0)); });
  const double time =
      slope_of([=](double a) { return std::abs(n0_so3_closed(bivector_with_square(a * a), gamma)); });
  const double want_t = -1 / (2 * gamma);
  return {std::abs(space + 0.5) < 0.05 && std::abs(time - want_t) < 0.1 * std::abs(want_t),
          fmt("spacelike %.4f (want -0.5), timelike %.4f (want %.3f)", space, time, want_t)};
}

Outcome degenerate() {
  const std::uint64_t n = 1000000, seed = 1;
  const DegenerateConfig base = DegenerateConfig::spatial_tetrahedron(std::sqrt(2.0));
  std::vector<MCEstimate> est;
  for (double t : {1.0, 2.0, 4.0}) est.push_back(n_degenerate_mc(base.scaled(t), 1.0, n, seed));
  const DegenerateConfig violated = base.with_v4(1.5 * base.plus[3], 1.5 * base.minus[3]);
  const MCEstimate bad = n_degenerate_mc(violated, 1.0, n, seed);

  double rel = 0;
  for (const auto& e : est) rel = std::max(rel, e.stderr_ / std::abs(e.mean));
  rel = std::max(rel, bad.stderr_ / std::abs(bad.mean));
  auto sep = [](const MCEstimate& a, const MCEstimate& b) {
    return (std::abs(a.mean) - std::abs(b.mean)) / std::hypot(a.stderr_, b.stderr_);
  };
  const double s12 = sep(est[0], est[1]), s24 = sep(est[1], est[2]), sc = sep(est[0], bad);
  return {rel < 0.05 && s12 >= 3 && s24 >= 3 && sc >= 3,
          fmt("|N| t=1,2,4: %.4e %.4e %.4e; violated %.4e; max rel se %.3f; sep %.1f %.1f sigma; closure %.1f sigma",
              std::abs(est[0].mean), std::abs(est[1].mean), std::abs(est[2].mean), std::abs(bad.mean), rel, s12,
              s24, sc)};
}

Outcome delta() {
  const double p = linearized_delta_prefactor(1.0);
  const double e = std::abs(p - 512 * pi * pi) / (512 * pi * pi);
  double mass = 0;
  for (double gamma : {1.0, 2.0}) {
    const DeltaMass d = mollified_delta_mass(gamma, 0.1);
    mass = std::max(mass, std::abs(d.total / d.analytic - 1));
  }
  return {e < 1e-12 && mass < 0.01, fmt("prefactor rel err %.1e, mass rel err %.2e", e, mass)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> list = {
      {1, "algebra identities", 1, algebra_identities},
      {2, "haar normalization", 1, haar},
      {3, "closure on the lattice", 5, closure},
      {4, "flatness and decomposition", 10, flatness},
      {5, "lattice dihedral angles", 1, angles},
      {6, "on-shell equivalence", 60, onshell},
      {7, "branch identities", 10, branches},
      {8, "model integral", 5, model},
      {9, "closed form vs contour quadrature", 30, n0_grid},
      {10, "suppression slopes", 30, slopes},
      {11, "degenerate amplitude", 600, degenerate},
      {12, "delta prefactor and mass", 30, delta},
  };
  int failed = 0;
  for (const Criterion& c : list) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && dt < c.budget_s;
    failed += !pass;
    std::printf("%s %2d %-34s %8.2fs (budget %gs)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, dt, c.budget_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(list.size()) - failed, list.size());
  return failed == 0 ? 0 : 1;
}
