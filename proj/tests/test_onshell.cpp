#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "regge/onshell.hpp"

using namespace regge;
using std::numbers::pi;

namespace {
const EdgeVector kLapse(0.1, 0.01, 0.02, 0.03);

ActionSetup setup_for(const Simplex4& s, const CertificationReport& r, Representation rep) {
  ActionSetup a;
  a.rep = rep;
  a.plus = BranchSector::geometric(s, Chirality::Plus, r.area_sign_plus);
  a.minus = BranchSector::geometric(s, Chirality::Minus, r.area_sign_minus);
  return a;
}
}  // namespace

TEST_SUITE("onshell") {
  TEST_CASE("regular simplex curvatures rotate by 2 pi - 2 alpha") {
    const StationaryCurvatures sc = stationary_curvatures(regular_simplex(), Chirality::Plus);
    const double c2 = std::cos(2 * pi - 2 * std::acos(0.25));
    for (const Rotor& r : sc.r) {
      CHECK(std::abs(to_adjoint(r).trace() - (1 + 2 * c2)) < 1e-10);
      CHECK(std::abs(r.norm() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("curvatures round trip through connections") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1, 1);
    std::array<Rotor, 4> p, m;
    for (int a = 0; a < 4; ++a) {
      p[a] = rotor_exp(ChiralVec(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), 0)));
      m[a] = conjugate(p[a]);
    }
    const BisimplexConnections c = connections_from_curvatures(p, m);
    CHECK(rotor_distance(c.plus[0], identity_rotor<double>()) == 0.0);
    for (int a = 0; a < 4; ++a) {
      CHECK(rotor_distance(c.curvature(0, a + 1, Chirality::Plus), p[a]) < 1e-14);
      CHECK(rotor_distance(c.curvature(0, a + 1, Chirality::Minus), m[a]) < 1e-14);
    }
    CHECK(bianchi_check(c) < 1e-13);
  }

  TEST_CASE("certification of the reference suite") {
    for (Representation rep : {Representation::SU2, Representation::SO3}) {
      CertifyOptions opt;
      opt.rep = rep;
      int id = 0;
      for (const NamedSimplex& ns : certification_suite(1, 4)) {
        const CertificationReport r = certify(ns.simplex, opt, id++);
        INFO(ns.name, " ", to_string(rep));
        CHECK(r.certified);
        CHECK(r.gap < 1e-8);
        CHECK(r.residual < 1e-5);
        CHECK(r.gauge < 1e-9);
      }
    }
  }

  TEST_CASE("certificate is constant along the gauge orbit") {
    const Simplex4 s = lapse_simplex(-1.0 / 3.0, kLapse);
    const CertificationReport r = certify(s);
    REQUIRE(r.certified);
    const ActionSetup setup = setup_for(s, r, Representation::SU2);
    const Rotor g = rotor_exp(ChiralVec(0.3, -0.2, 0.5));
    const BisimplexConnections moved =
        r.connections.gauge_transformed(g, Chirality::Plus).gauge_transformed(conjugate(g), Chirality::Minus);
    CHECK(std::abs(setup.evaluate(s, moved) - setup.evaluate(s, r.connections)) < 1e-10);
    CHECK(stationarity_residual(s, moved, setup) < 1e-5);
  }

  TEST_CASE("random connections are not stationary") {
    const Simplex4 s = lapse_simplex(-1.0 / 3.0, kLapse);
    const CertificationReport r = certify(s);
    const ActionSetup setup = setup_for(s, r, Representation::SU2);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    BisimplexConnections c;
    for (int i = 0; i < 5; ++i) {
      c.plus[i] = rotor_exp(ChiralVec(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))));
      c.minus[i] = conjugate(c.plus[i]);
    }
    CHECK(stationarity_residual(s, c, setup) > 1e-3);
    CHECK(gauge_residual(s, c, setup) < 1e-9);
  }

  TEST_CASE("perturbed simplices are reproducible") {
    std::mt19937_64 a(7), b(7);
    const Simplex4 x = perturbed_lapse_simplex(-1.0 / 3.0, kLapse, 0.05, a);
    const Simplex4 y = perturbed_lapse_simplex(-1.0 / 3.0, kLapse, 0.05, b);
    for (int i = 0; i < 5; ++i) CHECK(x.vertex(i) == y.vertex(i));
    CHECK(x.vertex(4).norm() == 0.0);
  }

  TEST_CASE("length perturbations keep the branch identities") {
    std::mt19937_64 rng(3);
    const Simplex4 flat = lapse_simplex(-1.0 / 3.0, kLapse);
    for (int n = 0; n < 20; ++n) {
      const Simplex4 s = length_perturbed_lapse_simplex(-1.0 / 3.0, kLapse, 0.05, rng);
      const EdgeVector d = s.vertex(0) - s.vertex(4), d0 = flat.vertex(0) - flat.vertex(4);
      const Eigen::Matrix4d g = metric(Signature::Lorentzian);
      CHECK(d.dot(g * d) < 0);
      CHECK(std::abs(d.dot(g * d) - d0.dot(g * d0)) < 0.01);
      for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
        const auto res = resolve_branch(s, c);
        for (int f = 0; f < 10; ++f)
          CHECK(std::abs(res[f].so3 - chiral_angle(s, all_faces()[f], c)) < 1e-8);
      }
    }
  }

  TEST_CASE("report json") {
    const CertificationReport r = certify(regular_simplex(), {}, 5);
    const std::string j = r.to_json();
    for (const char* key : {"\"simplex_id\":5", "\"rep\":\"su2\"", "\"gap\"", "\"residual\"",
                            "\"signs\"", "\"iterations\""})
      CHECK(j.find(key) != std::string::npos);
  }
}
