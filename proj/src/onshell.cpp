#include "regge/onshell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

std::array<int, 4> signs_from_index(int m) {
  std::array<int, 4> s;
  for (int a = 0; a < 4; ++a) s[a] = (m >> (3 - a)) & 1 ? -1 : 1;
  return s;
}

bool close(Complex a, Complex b) { return std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)); }

// +1 / -1 when the curvature of a face is a rotation by +-(pi - alpha) about the
// face normal (as a half-angle), 0 otherwise.
int classify_face(const ChiralVec& v, const Rotor& q, Complex alpha) {
  const ChiralVec n = v / clean_sqrt(square(v));
  const Complex z = dot(q.u, n);
  const double un = std::max(1.0, q.u.cwiseAbs().maxCoeff());
  if ((q.u - z * n).cwiseAbs().maxCoeff() > 1e-8 * un) return 0;
  const Complex h = kPi - alpha;
  if (!close(q.w, std::cos(h))) return 0;
  if (close(z, std::sin(h))) return 1;
  if (close(z, -std::sin(h))) return -1;
  return 0;
}

using Params = Eigen::Matrix<double, 24, 1>;

BisimplexConnections shifted(const BisimplexConnections& base, const Params& p) {
  BisimplexConnections c = base;
  for (int ch = 0; ch < 2; ++ch) {
    auto& om = c.chiral(ch == 0 ? Chirality::Plus : Chirality::Minus);
    for (int a = 0; a < 4; ++a) {
      const Eigen::Vector3d xi = p.segment<3>(12 * ch + 3 * a);
      if (xi.squaredNorm() > 0) om[a + 1] = compose(om[a + 1], rotor_exp<double>(xi.cast<Complex>()));
    }
  }
  return c;
}

Eigen::Matrix<Complex, 24, 1> gradient(const Simplex4& s, const BisimplexConnections& c,
                                       const ActionSetup& setup, double h) {
  Eigen::Matrix<Complex, 24, 1> g;
  for (int j = 0; j < 24; ++j) {
    Params e = Params::Zero();
    e(j) = h;
    g(j) = (setup.evaluate(s, shifted(c, e)) - setup.evaluate(s, shifted(c, -e))) / (2 * h);
  }
  return g;
}

Eigen::Matrix<double, 48, 1> stack(const Eigen::Matrix<Complex, 24, 1>& g) {
  Eigen::Matrix<double, 48, 1> r;
  r << g.real(), g.imag();
  return r;
}

}  // namespace

StationaryCurvatures stationary_curvatures(const Simplex4& s, Chirality c,
                                           std::optional<std::array<int, 4>> forced) {
  std::array<ChiralVec, 10> v;
  std::array<Complex, 10> alpha;
  for (int n = 0; n < 10; ++n) {
    v[n] = s.face_bivector(all_faces()[n]).chiral(c);
    alpha[n] = chiral_angle(s, all_faces()[n], c);
    if (std::abs(square(v[n])) < 1e-300) throw DegenerateGeometry("null face bivector");
  }
  auto build = [&](const std::array<int, 4>& sign) {
    StationaryCurvatures out;
    out.axis_sign = sign;
    std::array<Rotor, 5> om;
    om[0] = identity_rotor<double>();
    for (int a = 0; a < 4; ++a) {
      // faces (0,1)..(0,4) come first in all_faces()
      const ChiralVec n = double(sign[a]) * v[a] / clean_sqrt(square(v[a]));
      out.r[a] = rotor_from_axis_angle(2 * kPi - 2.0 * alpha[a], n);
      om[a + 1] = out.r[a];
    }
    out.classified = true;
    for (int n = 0; n < 10; ++n) {
      const FaceId f = all_faces()[n];
      const Rotor q = compose(inverse(om[f.i]), om[f.k]);
      out.area_sign[n] = classify_face(v[n], q, alpha[n]);
      out.classified = out.classified && out.area_sign[n] != 0;
    }
    return out;
  };
  if (forced) return build(*forced);
  for (int m = 0; m < 16; ++m) {
    auto out = build(signs_from_index(m));
    if (out.classified) return out;
  }
  throw CertificationFailure("no axis-sign choice gives the on-shell rotation pattern");
}

BisimplexConnections connections_from_curvatures(const std::array<Rotor, 4>& plus,
                                                 const std::array<Rotor, 4>& minus) {
  BisimplexConnections c;
  c.plus[0] = c.minus[0] = identity_rotor<double>();
  for (int a = 0; a < 4; ++a) {
    c.plus[a + 1] = plus[a];
    c.minus[a + 1] = minus[a];
  }
  return c;
}

Complex ActionSetup::evaluate(const Simplex4& s, const BisimplexConnections& c) const {
  return combine_gamma(connection_action(s, c, Chirality::Plus, plus, rep),
                       connection_action(s, c, Chirality::Minus, minus, rep), gamma);
}

double stationarity_residual(const Simplex4& s, const BisimplexConnections& c,
                             const ActionSetup& setup, double step) {
  if (!(step >= 1e-6 && step <= 1e-3)) throw ValidationError("step must lie in [1e-6, 1e-3]");
  return gradient(s, c, setup, step).cwiseAbs().maxCoeff();
}

double gauge_residual(const Simplex4& s, const BisimplexConnections& c, const ActionSetup& setup,
                      double step) {
  if (!(step >= 1e-6 && step <= 1e-3)) throw ValidationError("step must lie in [1e-6, 1e-3]");
  double worst = 0;
  for (Chirality ch : {Chirality::Plus, Chirality::Minus})
    for (int k = 0; k < 3; ++k) {
      ChiralVec xi = ChiralVec::Zero();
      xi(k) = step;
      const Complex fp = setup.evaluate(s, c.gauge_transformed(rotor_exp(xi), ch));
      const Complex fm = setup.evaluate(s, c.gauge_transformed(rotor_exp<double>(-xi), ch));
      worst = std::max(worst, std::abs(fp - fm) / (2 * step));
    }
  return worst;
}

std::string CertificationReport::to_json() const {
  nlohmann::json j;
  j["simplex_id"] = simplex_id;
  j["rep"] = regge::to_string(rep);
  j["gap"] = gap;
  j["residual"] = residual;
  j["signs"] = {{"plus", signs_plus}, {"minus", signs_minus}};
  j["area_signs"] = {{"plus", area_sign_plus}, {"minus", area_sign_minus}};
  j["iterations"] = iterations;
  j["certified"] = certified;
  return j.dump();
}

Simplex4 perturbed_lapse_simplex(double lambda, const EdgeVector& lapse, double amplitude,
                                 std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  auto x = lapse_simplex(lambda, lapse).vertices();
  for (int i = 0; i < 4; ++i)
    for (int d = 0; d < 4; ++d) x[i](d) += amplitude * nd(rng) * (d == 0 ? std::abs(lapse(0)) : 1.0);
  return Simplex4::from_points(x);
}

Simplex4 length_perturbed_lapse_simplex(double lambda, const EdgeVector& lapse, double amplitude,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const Eigen::Matrix4d g = metric(Signature::Lorentzian);
  const double unit = std::abs(lapse.dot(g * lapse));
  const auto x = lapse_simplex(lambda, lapse).vertices();
  std::array<double, 10> target;
  for (int n = 0; n < 10; ++n) {
    const EdgeVector d = x[all_faces()[n].i] - x[all_faces()[n].k];
    target[n] = d.dot(g * d) + amplitude * unit * nd(rng);
  }
  return Simplex4::from_points(refit_squared_lengths(x, target));
}

std::vector<NamedSimplex> certification_suite(std::uint64_t seed, int perturbed) {
  const EdgeVector lapse(0.1, 0.01, 0.02, 0.03);
  std::vector<NamedSimplex> suite;
  suite.push_back({"regular", regular_simplex()});
  suite.push_back({"lapse(-1/3)", lapse_simplex(-1.0 / 3.0, lapse)});
  suite.push_back({"lapse(0)", lapse_simplex(0.0, lapse)});
  suite.push_back({"lapse(0.2)", lapse_simplex(0.2, lapse)});
  std::mt19937_64 rng(seed);
  for (int n = 0; n < perturbed; ++n)
    suite.push_back({"perturbed-" + std::to_string(n),
                     perturbed_lapse_simplex(-1.0 / 3.0, lapse, 0.05, rng)});
  return suite;
}

CertificationReport certify(const Simplex4& s, const CertifyOptions& opt, int simplex_id) {
  CertificationReport rep;
  rep.simplex_id = simplex_id;
  rep.rep = opt.rep;

  StationaryCurvatures sc[2];
  ActionSetup setup;
  setup.rep = opt.rep;
  setup.gamma = opt.gamma;
  for (int ch = 0; ch < 2; ++ch) {
    const Chirality c = ch == 0 ? Chirality::Plus : Chirality::Minus;
    sc[ch] = stationary_curvatures(s, c, opt.forced_signs);
    std::array<int, 10> orient;
    for (int n = 0; n < 10; ++n) orient[n] = sc[ch].area_sign[n] == 0 ? 1 : sc[ch].area_sign[n];
    (ch == 0 ? setup.plus : setup.minus) = BranchSector::geometric(s, c, orient);
  }
  rep.signs_plus = sc[0].axis_sign;
  rep.signs_minus = sc[1].axis_sign;
  rep.area_sign_plus = setup.plus.area_sign;
  rep.area_sign_minus = setup.minus.area_sign;
  const BisimplexConnections candidate = connections_from_curvatures(sc[0].r, sc[1].r);

  auto measure = [&](const BisimplexConnections& conn) {
    rep.connections = conn;
    rep.gap_plus = std::abs(connection_action(s, conn, Chirality::Plus, setup.plus, opt.rep) -
                            0.5 * chirality_regge_part(s, Chirality::Plus, setup.plus.area_sign));
    rep.gap_minus = std::abs(connection_action(s, conn, Chirality::Minus, setup.minus, opt.rep) -
                             0.5 * chirality_regge_part(s, Chirality::Minus, setup.minus.area_sign));
    rep.gap = std::max(rep.gap_plus, rep.gap_minus);
    rep.residual = stationarity_residual(s, conn, setup, opt.step);
    rep.gauge = gauge_residual(s, conn, setup, opt.step);
  };
  auto passed = [&] { return rep.gap < opt.gap_tolerance && rep.residual < opt.residual_tolerance; };

  measure(candidate);
  if (!passed() && opt.refine) {
    // Damped Gauss-Newton on the complex gradient, kept near the candidate.
    Params p = Params::Zero();
    auto grad_at = [&](const Params& q) { return stack(gradient(s, shifted(candidate, q), setup, opt.step)); };
    Eigen::Matrix<double, 48, 1> g = grad_at(p);
    for (rep.iterations = 1; rep.iterations <= opt.max_iterations; ++rep.iterations) {
      Eigen::Matrix<double, 48, 24> J;
      const double h = 1e-4;
      for (int j = 0; j < 24; ++j) {
        Params e = Params::Zero();
        e(j) = h;
        J.col(j) = (grad_at(p + e) - grad_at(p - e)) / (2 * h);
      }
      const Params delta = -J.completeOrthogonalDecomposition().solve(g);
      double t = 1;
      bool improved = false;
      for (int halving = 0; halving < 30; ++halving, t /= 2) {
        const Params trial = p + t * delta;
        const auto gt = grad_at(trial);
        if (gt.norm() < g.norm()) {
          p = trial;
          g = gt;
          improved = true;
          break;
        }
      }
      if (!improved || p.cwiseAbs().maxCoeff() > opt.max_drift) break;
      if (g.cwiseAbs().maxCoeff() < opt.residual_tolerance) break;
    }
    rep.iterations = std::min(rep.iterations, opt.max_iterations);
    if (p.cwiseAbs().maxCoeff() <= opt.max_drift) measure(shifted(candidate, p));
  }
  rep.certified = passed();
  return rep;
}

}  // namespace regge
