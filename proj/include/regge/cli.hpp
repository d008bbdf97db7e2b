#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "regge/lattice.hpp"

namespace regge {

struct RunConfig {
  std::string command;
  double gamma = 1.0;
  double lambda = -1.0 / 3.0;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string output;  // empty: standard output
  std::string format = "csv";
  std::string rep = "su2";
  std::optional<double> tolerance;  // overrides every check tolerance

  // command-specific
  std::string region = "spacelike";
  double area_scale = 1.0;
  double closure_violation = 0.0;
  std::string chirality = "plus";
  bool inject_bad_sign = false;
  LatticeConfig lattice;

  void validate() const;
};

// Exit codes.
enum ExitCode { kSuccess = 0, kNumericalFailure = 1, kInvalidInput = 2 };

int cmd_lattice_info(const RunConfig& cfg, std::ostream& out);
int cmd_onshell_verify(const RunConfig& cfg, std::ostream& out);
int cmd_suppression_curve(const RunConfig& cfg, std::ostream& out);
int cmd_degenerate_n(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& cfg, std::ostream& out);

struct SelfCheck {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};
std::vector<SelfCheck> run_selfchecks(std::optional<double> tolerance_override = std::nullopt);

// Parses arguments, validates, dispatches; messages for invalid input go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regge
