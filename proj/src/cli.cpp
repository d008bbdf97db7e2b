#include "regge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <CLI11.hpp>
#include <json.hpp>

#include "regge/action.hpp"
#include "regge/onshell.hpp"
#include "regge/pathint.hpp"

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Lattice build_lattice(const RunConfig& cfg) {
  LatticeConfig lc = cfg.lattice;
  lc.lambda = cfg.lambda;
  return Lattice(lc);
}

Bivector curve_bivector(double v, bool spacelike) { return bivector_with_square(spacelike ? -v * v : v * v); }

Complex n0_closed(Representation rep, const Bivector& b, double gamma) {
  return rep == Representation::SU2 ? n0_su2_closed(b, gamma) : n0_so3_closed(b, gamma);
}

// Slope of log |N0| against |v| over [5, 20], or NaN where the form is on its cut.
double curve_slope(Representation rep, bool spacelike, double gamma) {
  std::vector<double> x, y;
  try {
    for (int i = 0; i < 50; ++i) {
      const double v = 5.0 + 15.0 * i / 49.0;
      x.push_back(v);
      y.push_back(std::abs(n0_closed(rep, curve_bivector(v, spacelike), gamma)));
    }
  } catch (const BranchError&) {
    return std::nan("");
  }
  return fit_log_slope(x, y);
}

}  // namespace

void RunConfig::validate() const {
  if (samples == 0) throw ValidationError("samples must be positive");
  if (gamma == 0 || std::isnan(gamma)) throw ValidationError("gamma must be nonzero");
  if (!(lambda > -0.5 && lambda < 1.0)) throw ValidationError("lambda must lie in (-1/2, 1)");
  if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
  representation_from_string(rep);
  if (region != "spacelike" && region != "timelike")
    throw ValidationError("region must be spacelike or timelike");
  if (chirality != "plus" && chirality != "minus")
    throw ValidationError("chirality must be plus or minus");
  if (!(area_scale > 0)) throw ValidationError("area scale must be positive");
  if (tolerance && !(*tolerance >= 0)) throw ValidationError("tolerance must be non-negative");
  LatticeConfig lc = lattice;
  lc.lambda = lambda;
  lc.validate();
}

int cmd_lattice_info(const RunConfig& cfg, std::ostream& out) {
  const Lattice lat = build_lattice(cfg);
  const DihedralTable3d t = dihedral_angles_3d(cfg.lambda);
  const std::vector<std::pair<std::string, double>> angles = {
      {"a2_43_1", t.a2_43_1}, {"a1_42_3", t.a1_42_3}, {"a4_31_2", t.a4_31_2},
      {"a4_23_1", t.a4_23_1}, {"a4_12_3", t.a4_12_3}, {"a3_41_2", t.a3_41_2}};
  if (cfg.format == "json") {
    nlohmann::json j;
    j["lambda"] = cfg.lambda;
    j["simplices"] = lat.simplices().size();
    j["vertices"] = lat.vertex_count();
    j["triangles"] = lat.triangles().size();
    j["edges"] = lat.edge_count();
    nlohmann::json mult;
    for (const auto& [n, count] : lat.multiplicity_histogram()) mult[std::to_string(n)] = count;
    j["multiplicity"] = mult;
    nlohmann::json dih;
    for (const auto& [name, a] : angles) dih[name] = a;
    j["dihedral"] = dih;
    j["min_dihedral"] = t.min();
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << "quantity,value\n";
  out << "lambda," << num(cfg.lambda) << "\n";
  out << "simplices," << lat.simplices().size() << "\n";
  out << "vertices," << lat.vertex_count() << "\n";
  out << "triangles," << lat.triangles().size() << "\n";
  out << "edges," << lat.edge_count() << "\n";
  for (const auto& [n, count] : lat.multiplicity_histogram())
    out << "multiplicity_" << n << "," << count << "\n";
  for (const auto& [name, a] : angles) out << name << "," << num(a) << "\n";
  out << "min_dihedral," << num(t.min()) << "\n";
  return kSuccess;
}

int cmd_onshell_verify(const RunConfig& cfg, std::ostream& out) {
  CertifyOptions opt;
  opt.rep = representation_from_string(cfg.rep);
  opt.gamma = cfg.gamma;
  if (cfg.tolerance) opt.gap_tolerance = *cfg.tolerance;
  if (cfg.inject_bad_sign) opt.forced_signs = std::array<int, 4>{-1, 1, 1, 1};

  bool all = true;
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == "csv") out << "name,rep,gap,residual,gauge,iterations,certified\n";
  const auto suite = certification_suite(splitmix64(cfg.seed));
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CertificationReport r;
    try {
      r = certify(suite[i].simplex, opt, int(i));
    } catch (const CertificationFailure&) {
      r.simplex_id = int(i);
      r.rep = opt.rep;
      r.gap = r.residual = std::nan("");
      r.certified = false;
    }
    all = all && r.certified;
    if (cfg.format == "csv") {
      out << suite[i].name << "," << cfg.rep << "," << num(r.gap) << "," << num(r.residual) << ","
          << num(r.gauge) << "," << r.iterations << "," << (r.certified ? "true" : "false") << "\n";
    } else {
      auto j = nlohmann::json::parse(r.to_json());
      j["name"] = suite[i].name;
      rows.push_back(j);
    }
  }
  if (cfg.format == "json") out << nlohmann::json{{"reports", rows}, {"all_certified", all}}.dump(2) << "\n";
  return all ? kSuccess : kNumericalFailure;
}

int cmd_suppression_curve(const RunConfig& cfg, std::ostream& out) {
  const Representation rep = representation_from_string(cfg.rep);
  const bool spacelike = cfg.region == "spacelike";
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == "csv") out << "v2,re_n0,im_n0,closed_re,closed_im,rel_err\n";
  for (int i = 0; i < 50; ++i) {
    const double v = 5.0 + 15.0 * i / 49.0;
    const Bivector b = curve_bivector(v, spacelike);
    const Complex closed = n0_closed(rep, b, cfg.gamma);
    const Complex quad =
        rep == Representation::SU2 ? n0_deformed_quadrature(b, cfg.gamma) : n0_so3_quadrature(b, cfg.gamma);
    const double rel = std::abs(quad - closed) / std::abs(closed);
    const double v2 = spacelike ? -v * v : v * v;
    if (cfg.format == "csv") {
      out << num(v2) << "," << num(quad.real()) << "," << num(quad.imag()) << "," << num(closed.real())
          << "," << num(closed.imag()) << "," << num(rel) << "\n";
    } else {
      rows.push_back({{"v2", v2}, {"re_n0", quad.real()}, {"im_n0", quad.imag()},
                      {"closed_re", closed.real()}, {"closed_im", closed.imag()}, {"rel_err", rel}});
    }
  }
  nlohmann::json slopes;
  for (Representation r : {Representation::SU2, Representation::SO3})
    for (bool space : {true, false}) {
      const double s = curve_slope(r, space, cfg.gamma);
      slopes[to_string(r)][space ? "spacelike" : "timelike"] =
          std::isnan(s) ? nlohmann::json(nullptr) : nlohmann::json(s);
    }
  const double g = std::isinf(cfg.gamma) ? 0.0 : 1.0 / cfg.gamma;
  nlohmann::json summary = {{"gamma", cfg.gamma},
                            {"rep", cfg.rep},
                            {"region", cfg.region},
                            {"slopes", slopes},
                            {"expected",
                             {{"so3", {{"spacelike", -0.5}, {"timelike", -0.5 * g}}},
                              {"su2", {{"spacelike", -1.0}, {"timelike", -g}}}}}};
  if (cfg.format == "csv") {
    out << summary.dump() << "\n";
  } else {
    summary["rows"] = rows;
    out << summary.dump(2) << "\n";
  }
  return kSuccess;
}

int cmd_degenerate_n(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // spatial tetrahedron of the lapse-first simplex, face squares (-2, -2, -1, -1)
  DegenerateConfig dc = DegenerateConfig::spatial_tetrahedron(std::sqrt(2.0)).scaled(cfg.area_scale);
  dc = dc.with_v4((1 + cfg.closure_violation) * dc.plus[3], (1 + cfg.closure_violation) * dc.minus[3]);
  const Chirality c = cfg.chirality == "plus" ? Chirality::Plus : Chirality::Minus;
  const MCEstimate est =
      n_degenerate_mc(dc, cfg.gamma, cfg.samples, cfg.seed, c, cfg.tolerance.value_or(0.05));
  if (!est.converged)
    err << "warning: stderr " << num(est.stderr_) << " exceeds the requested relative tolerance\n";
  out << est.to_json() << "\n";
  return kSuccess;
}

std::vector<SelfCheck> run_selfchecks(std::optional<double> tolerance_override) {
  std::vector<SelfCheck> out;
  auto add = [&](const std::string& name, double value, double tol) {
    const double t = tolerance_override.value_or(tol);
    out.push_back({name, value, t, std::isfinite(value) && value <= t});
  };

  add("algebra-identities", sigma_identities_check(1000, 1).worst(), 1e-10);

  const Lattice lat{LatticeConfig{}};
  double closure = 0;
  for (int s = 0; s < int(lat.simplices().size()); ++s)
    closure = std::max(closure, lat.geometry(s).closure_residual());
  add("closure", closure, 1e-12);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  double bianchi = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BisimplexConnections c;
    for (Chirality ch : {Chirality::Plus, Chirality::Minus})
      for (auto& om : c.chiral(ch)) {
        ChiralVec xi;
        for (int k = 0; k < 3; ++k) xi(k) = Complex(nd(rng), nd(rng));
        om = rotor_exp(xi);
      }
    bianchi = std::max(bianchi, bianchi_check(c));
  }
  add("bianchi", bianchi, 1e-12);

  add("flat-action", std::abs(regge_total(lat)), 1e-8);

  Lattice bumpy{LatticeConfig{}};
  bumpy.perturb_lengths(0.05, 7);
  add("decomposition", std::abs(regge_total(bumpy) - decompose_total(bumpy)), 1e-10);

  add("haar-normalization", std::abs(haar_normalization() - 1), 1e-10);

  double real_err = 0;
  for (double l : {0.05, 1.0, 5.0, 20.0}) {
    real_err = std::max(real_err, std::abs(bessel_K0(l) / std::cyl_bessel_k(0.0, l) - 1));
    real_err = std::max(real_err, std::abs(bessel_K1(l) / std::cyl_bessel_k(1.0, l) - 1));
  }
  add("bessel-real", real_err, 1e-10);

  double contour_err = 0;
  for (Complex l : {Complex(1, 1), Complex(0.3, 2), Complex(4, -3)}) {
    contour_err = std::max(contour_err, std::abs(bessel_K1(l) / bessel_K1_phi(l) - 1.0));
    contour_err = std::max(contour_err, std::abs(bessel_Ki1(l) / bessel_Ki1_phi(l) - 1.0));
  }
  add("bessel-contour", contour_err, 1e-10);

  double model_err = 0;
  for (double a : {1.0, 5.0, 10.0})
    model_err = std::max(model_err, std::abs(model_integral(a) / (2 * std::cyl_bessel_k(0.0, a)) - 1));
  add("model-integral", model_err, 1e-8);
  return out;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  const auto checks = run_selfchecks(cfg.tolerance);
  bool all = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    if (cfg.format == "json")
      list.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    else
      out << (c.pass ? "PASS " : "FAIL ") << c.name << " " << num(c.value) << " (tol " << c.tolerance
          << ")\n";
  }
  if (cfg.format == "json") out << nlohmann::json{{"checks", list}, {"pass", all}}.dump(2) << "\n";
  return all ? kSuccess : kNumericalFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regge / connection action numerics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path;
  double tolerance = 0;
  app.add_option("--config", config_path, "JSON file with run and lattice settings");
  auto* o_gamma = app.add_option("--gamma", flags.gamma, "Barbero-Immirzi parameter (inf allowed)");
  auto* o_lambda = app.add_option("--lambda", flags.lambda, "pairwise product of spatial axes");
  auto* o_samples = app.add_option("--samples", flags.samples, "Monte-Carlo samples");
  auto* o_seed = app.add_option("--seed", flags.seed, "root seed");
  auto* o_output = app.add_option("--output", flags.output, "output file");
  auto* o_format = app.add_option("--format", flags.format, "csv or json");
  auto* o_rep = app.add_option("--rep", flags.rep, "su2 or so3");
  auto* o_tol = app.add_option("--tolerance", tolerance, "override check tolerances");

  auto* lattice_info = app.add_subcommand("lattice-info", "lattice counts and 3-d dihedral angles");
  auto* onshell = app.add_subcommand("onshell-verify", "certify the on-shell connection suite");
  onshell->add_flag("--inject-bad-sign", flags.inject_bad_sign, "force a wrong axis sign");
  auto* curve = app.add_subcommand("suppression-curve", "single-triangle amplitude against |v|");
  auto* o_region = curve->add_option("--region", flags.region, "spacelike or timelike");
  auto* degenerate = app.add_subcommand("degenerate-n", "Monte-Carlo degenerate simplex amplitude");
  auto* o_scale = degenerate->add_option("--area-scale", flags.area_scale, "scale of all area vectors");
  auto* o_viol =
      degenerate->add_option("--closure-violation", flags.closure_violation, "relative change of v4");
  auto* o_chir = degenerate->add_option("--chirality", flags.chirality, "plus or minus");
  auto* selftest = app.add_subcommand("selftest", "invariant suite");
  auto* o_json = selftest->add_flag("--json", "machine-readable result list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kSuccess : kInvalidInput;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("cannot read config file " + config_path);
      std::stringstream text;
      text << in.rdbuf();
      const auto j = nlohmann::json::parse(text.str());
      cfg.lattice = LatticeConfig::from_json(text.str());
      cfg.lambda = cfg.lattice.lambda;
      if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
      if (j.contains("samples")) cfg.samples = j.at("samples").get<std::uint64_t>();
      if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
      if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
      if (j.contains("rep")) cfg.rep = j.at("rep").get<std::string>();
      if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    }
    if (*o_gamma) cfg.gamma = flags.gamma;
    if (*o_lambda) cfg.lambda = flags.lambda;
    if (*o_samples) cfg.samples = flags.samples;
    if (*o_seed) cfg.seed = flags.seed;
    if (*o_output) cfg.output = flags.output;
    if (*o_format) cfg.format = flags.format;
    if (*o_rep) cfg.rep = flags.rep;
    if (*o_tol) cfg.tolerance = tolerance;
    if (*o_region) cfg.region = flags.region;
    if (*o_scale) cfg.area_scale = flags.area_scale;
    if (*o_viol) cfg.closure_violation = flags.closure_violation;
    if (*o_chir) cfg.chirality = flags.chirality;
    if (*o_json) cfg.format = "json";
    cfg.inject_bad_sign = flags.inject_bad_sign;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.validate();
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid config: " << e.what() << "\n";
    return kInvalidInput;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "invalid input: cannot open " << cfg.output << "\n";
      return kInvalidInput;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;

  try {
    if (*lattice_info) return cmd_lattice_info(cfg, sink);
    if (*onshell) return cmd_onshell_verify(cfg, sink);
    if (*curve) return cmd_suppression_curve(cfg, sink);
    if (*degenerate) return cmd_degenerate_n(cfg, sink, err);
    if (*selftest) return cmd_selftest(cfg, sink);
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInvalidInput;
}

}  // namespace regge
