#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "regge/lattice.hpp"

using namespace regge;
using std::numbers::pi;

TEST_SUITE("lattice") {
  TEST_CASE("counts on the 2^4 periodic lattice") {
    const Lattice lat(LatticeConfig{});
    CHECK(lat.vertex_count() == 16);
    CHECK(lat.simplices().size() == 384);
    CHECK(lat.triangles().size() == 800);
    CHECK(lat.edge_count() == 240);
    const auto h = lat.multiplicity_histogram();
    CHECK(h.size() == 2);
    CHECK(h.at(4) == 480);
    CHECK(h.at(6) == 320);
  }

  TEST_CASE("each cell holds 24 simplices stepping along all four axes") {
    const Lattice lat(LatticeConfig{});
    std::set<std::array<int, 4>> paths;
    int in_origin_cell = 0;
    for (const LatticeSimplex& s : lat.simplices()) {
      std::array<int, 4> p = s.path;
      std::sort(p.begin(), p.end());
      CHECK(p == std::array<int, 4>{0, 1, 2, 3});
      if (s.coords[4] == std::array<int, 4>{0, 0, 0, 0}) {
        ++in_origin_cell;
        paths.insert(s.path);
      }
    }
    CHECK(in_origin_cell == 24);
    CHECK(paths.size() == 24);
  }

  TEST_CASE("triangle multiplicities of the lapse-first simplex") {
    const Lattice lat(LatticeConfig{});
    int id = -1;
    for (std::size_t n = 0; n < lat.simplices().size(); ++n) {
      const LatticeSimplex& s = lat.simplices()[n];
      if (s.coords[4] == std::array<int, 4>{0, 0, 0, 0} && s.path == std::array<int, 4>{0, 1, 2, 3})
        id = int(n);
    }
    REQUIRE(id >= 0);
    auto mult = [&](FaceId f) { return lat.triangles()[lat.triangle_of(id, f)].multiplicity(); };
    CHECK(mult(FaceId{2, 3}) == 6);  // (041)
    CHECK(mult(FaceId{1, 2}) == 6);  // (043)
    CHECK(mult(FaceId{1, 3}) == 4);  // (042)
    for (const FaceId& f : all_faces()) {
      const int m = mult(f);
      CHECK((m == 4 || m == 6));
    }
  }

  TEST_CASE("closure on every simplex") {
    const Lattice lat(LatticeConfig{});
    double worst = 0;
    for (std::size_t n = 0; n < lat.simplices().size(); ++n)
      worst = std::max(worst, lat.geometry(int(n)).closure_residual());
    CHECK(worst < 1e-12);
  }

  TEST_CASE("flat lattice has no deficit, also after moving vertices") {
    for (double lam : {-1.0 / 3.0, 0.0, 0.2}) {
      LatticeConfig cfg;
      cfg.lambda = lam;
      Lattice lat(cfg);
      for (const Complex& s : angle_sums(lat)) CHECK_FALSE(std::abs(s - 2 * pi) > 1e-8);
      lat.displace(0.02, 3);
      for (const Complex& s : angle_sums(lat)) CHECK_FALSE(std::abs(s - 2 * pi) > 1e-8);
    }
  }

  TEST_CASE("perturbed lengths produce curvature") {
    Lattice lat(LatticeConfig{});
    lat.perturb_lengths(0.05, 7);
    double worst = 0;
    for (const Complex& s : angle_sums(lat)) worst = std::max(worst, std::abs(s - 2 * pi));
    CHECK(worst > 1e-6);
  }

  TEST_CASE("configuration validation") {
    LatticeConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.lambda = 0.99;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.lambda = -0.5;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.lambda = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = LatticeConfig{};
    cfg.extents = {2, 2, 0, 2};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = LatticeConfig{};
    cfg.lapse = EdgeVector(0.01, 0.1, 0, 0);
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = LatticeConfig{};
    cfg.scale = -1;
    CHECK_THROWS_AS(Lattice{cfg}, ValidationError);
    for (double lam : {-0.45, 0.0, 0.5, 0.9}) {
      cfg = LatticeConfig{};
      cfg.lambda = lam;
      CHECK_NOTHROW(cfg.validate());
    }
  }

  TEST_CASE("json round trip") {
    LatticeConfig cfg;
    cfg.lambda = 0.2;
    cfg.scale = 1.5;
    cfg.extents = {2, 3, 2, 4};
    const LatticeConfig back = LatticeConfig::from_json(cfg.to_json());
    CHECK(back.lambda == cfg.lambda);
    CHECK(back.scale == cfg.scale);
    CHECK(back.extents == cfg.extents);
    CHECK(back.lapse == cfg.lapse);
    CHECK_THROWS_AS(LatticeConfig::from_json("{\"lambda\": 0.1, \"lapse\": [1, 2]}"), ValidationError);
    CHECK_THROWS_AS(LatticeConfig::from_json("not json"), ValidationError);
  }
}
