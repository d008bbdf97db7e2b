#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "regge/action.hpp"

using namespace regge;
using std::numbers::pi;

namespace {

const Complex I(0, 1);
const EdgeVector kLapse(0.1, 0.01, 0.02, 0.03);

Rotor random_rotor(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  ChiralVec xi;
  for (int k = 0; k < 3; ++k) xi(k) = Complex(u(rng), u(rng));
  return rotor_exp(xi);
}

BisimplexConnections random_connections(std::mt19937_64& rng, double spread = 1.0) {
  BisimplexConnections c;
  for (int i = 0; i < 5; ++i) {
    c.plus[i] = random_rotor(rng, spread);
    c.minus[i] = conjugate(c.plus[i]);
  }
  return c;
}

}  // namespace

TEST_SUITE("action") {
  TEST_CASE("bisimplex action of the regular simplex") {
    const double expect = 10 * (2 * pi - 2 * std::acos(0.25)) * std::sqrt(3.0) / 4;
    CHECK(std::abs(std::abs(regge_bisimplex(regular_simplex())) - expect) < 1e-10);
  }

  TEST_CASE("flat lattice and decomposition identity") {
    Lattice lat(LatticeConfig{});
    CHECK(std::abs(regge_total(lat)) < 1e-8);
    CHECK(std::abs(decompose_total(lat)) < 1e-8);
    lat.perturb_lengths(0.05, 7);
    const Complex total = regge_total(lat);
    CHECK(std::abs(total) > 1e-6);
    CHECK(std::abs(total - decompose_total(lat)) < 1e-10);
  }

  TEST_CASE("gamma combination") {
    const Complex a(1.3, 0.4);
    CHECK(std::abs(combine_gamma(a, std::conj(a), 1.0) - (2 * a.real() - 2 * a.imag())) < 1e-15);
    CHECK(std::abs(combine_gamma(Complex(0.7), Complex(0.7), 3.0) - 1.4) < 1e-15);
    CHECK(std::abs(combine_gamma(a, Complex(2.0), INFINITY) - (a + 2.0)) < 1e-15);
    CHECK_THROWS_AS(combine_gamma(a, a, 0.0), DomainError);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int n = 0; n < 100; ++n) {
      const Complex p(g(rng), g(rng));
      const Complex t = combine_gamma(p, std::conj(p), 0.5 + std::abs(g(rng)));
      CHECK_FALSE(std::abs(t.imag()) > 1e-9 * std::abs(t));
    }
  }

  TEST_CASE("bianchi identities") {
    BisimplexConnections id;
    CHECK(bianchi_check(id) == 0.0);
    std::mt19937_64 rng(32);
    for (int n = 0; n < 50; ++n) CHECK_FALSE(bianchi_check(random_connections(rng)) > 1e-13);

    CurvatureSet set = CurvatureSet::from_connections(random_connections(rng), Chirality::Plus);
    set.r[1][3] = compose(set.r[1][3], rotor_from_axis_angle(Complex(0.01), ChiralVec(0, 0, 1)));
    CHECK(bianchi_check(set) > 1e-3);
  }

  TEST_CASE("connection actions are gauge invariant") {
    const Simplex4 s = lapse_simplex(-1.0 / 3.0, kLapse);
    std::mt19937_64 rng(33);
    for (Representation rep : {Representation::SU2, Representation::SO3})
      for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
        const BranchSector sec = BranchSector::geometric(s, c);
        const BisimplexConnections conn = random_connections(rng, 0.5);
        const Complex a = connection_action(s, conn, c, sec, rep);
        const Complex b = connection_action(s, conn.gauge_transformed(random_rotor(rng, 0.8), c),
                                            c, sec, rep);
        CHECK(std::abs(a - b) < 1e-10 * (1 + std::abs(a)));
      }
  }

  TEST_CASE("identity connections leave only constant terms") {
    const Simplex4 s = lapse_simplex(-1.0 / 3.0, kLapse);
    const BisimplexConnections id;
    for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
      const BranchSector sec = BranchSector::geometric(s, c);
      // every arcsin argument vanishes, so the value does not depend on the areas' direction
      const Complex a = connection_action(s, id, c, sec, Representation::SU2);
      CHECK(std::isfinite(a.real()));
      CHECK(std::isfinite(a.imag()));
    }
  }

  TEST_CASE("branch resolution on the flat background") {
    const Simplex4 s = lapse_simplex(-1.0 / 3.0, kLapse);
    for (Chirality c : {Chirality::Plus, Chirality::Minus}) {
      const auto res = resolve_branch(s, c);
      for (int n = 0; n < 10; ++n) {
        const Complex alpha = chiral_angle(s, all_faces()[n], c);
        if (res[n].type == AngleType::Real) {
          CHECK(alpha.real() > pi / 4);
          CHECK(alpha.real() < 3 * pi / 4);
        }
        CHECK(std::abs(res[n].so3 - alpha) < 1e-8);
        CHECK(std::abs(res[n].su2 - alpha) < 1e-8);
      }
    }
    CHECK(resolve_branch(s)[face_index(FaceId{0, 4})].type == AngleType::Imaginary);
    CHECK(resolve_branch(s)[face_index(FaceId{0, 1})].type == AngleType::HalfPiPlusImaginary);
    CHECK(resolve_branch(s)[face_index(FaceId{2, 3})].type == AngleType::Real);
  }

  TEST_CASE("branch resolution boundaries") {
    CHECK_THROWS_AS(resolve_angle(Complex(0.9 * pi)), SectorViolation);
    CHECK_THROWS_AS(resolve_angle(Complex(0.2 * pi)), SectorViolation);
    CHECK_THROWS_AS(resolve_angle(Complex(pi / 2, 0.3), CutSide::None), BranchError);
    const ResolvedAngle above = resolve_angle(Complex(pi / 2, 0.3), CutSide::Above);
    const ResolvedAngle below = resolve_angle(Complex(pi / 2, 0.3), CutSide::Below);
    CHECK(above.sign == -below.sign);
    CHECK(std::abs(principal_arcsin(Complex(0.5)) - std::asin(0.5)) < 1e-15);
    CHECK_THROWS_AS(principal_arcsin(Complex(2.0), CutSide::None), BranchError);
    const Complex up = principal_arcsin(Complex(2.0), CutSide::Above);
    const Complex dn = principal_arcsin(Complex(2.0), CutSide::Below);
    CHECK(std::abs(std::sin(up) - 2.0) < 1e-14);
    CHECK(std::abs(up - std::conj(dn)) < 1e-14);
  }

  TEST_CASE("sector arcsin picks the root nearest the reference") {
    const Complex y(2.1, 0.3);
    const Complex z = std::sin(y);
    CHECK(std::abs(sector_arcsin(z, Complex(2.0, 0.2)) - y) < 1e-12);
    CHECK(std::abs(sector_arcsin(z, Complex(pi - 2.0, -0.2)) - (pi - y)) < 1e-12);
  }

  TEST_CASE("sector constants") {
    for (int n : {4, 6}) {
      CHECK(std::abs(sector_constant(AngleType::HalfPiPlusImaginary, n) - (pi / n - pi / 4)) < 1e-15);
      CHECK(std::abs(sector_constant(AngleType::Real, n) - (pi / n - pi / 4)) < 1e-15);
      CHECK(std::abs(sector_constant(AngleType::Imaginary, n) - pi / n) < 1e-15);
    }
    CHECK_THROWS_AS(sector_constant(AngleType::Real, 0), ValidationError);

    const Lattice lat(LatticeConfig{});
    const auto table = sector_constants(lat);
    CHECK(table.size() == 3840);
    for (const auto& e : table) {
      CHECK_FALSE((e.multiplicity != 4 && e.multiplicity != 6));
      if (e.type != AngleType::Imaginary)
        CHECK_FALSE(std::abs(e.constant - (pi / e.multiplicity - pi / 4)) > 1e-15);
    }
  }

  TEST_CASE("action value json") {
    const ActionValue v{Complex(1, 2), Complex(1, -2), Complex(2, 0)};
    const std::string j = v.to_json(3, "su2");
    CHECK(j.find("\"simplex_id\":3") != std::string::npos);
    CHECK(j.find("\"sector\":\"su2\"") != std::string::npos);
  }
}
