#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wns/cnd.hpp"

namespace wns {

// Everything a run needs, collected from (in order of increasing priority)
// built-in defaults, the WNS_OUT environment variable, a config file of
// `key = value` lines, and command-line flags.
struct RunConfig {
  std::uint64_t seed = 20260825;
  std::string out = "out";
  double lambda = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 2.0;
  std::string model = "l2";     // l2 | fourier | mixture
  std::string mu = "lebesgue";  // lebesgue | powerlaw:H | atoms:FILE
  double u = 0.5;               // mixture weight
  int n = 8;                    // generator count / affinity horizon
  int modes = 6;                // Fock modes d
  int degree = 10;              // Fock degree cap K
  int count = 100000;           // sample rows / experiment trials
  int basis = 32;               // Hermite basis size D
  std::optional<double> tol;    // overrides the per-check defaults

  static RunConfig defaults();  // respects WNS_OUT

  // one config entry; unknown keys and malformed values throw
  // std::invalid_argument (a configuration error)
  void apply(const std::string& key, const std::string& value);

  nlohmann::json echo() const;
};

// `key = value` per line, `#` starts a comment
RunConfig config_from_file(const std::string& path, RunConfig base);

SpectralMeasure measure_from_spec(const std::string& spec);
CndModel model_from_config(const RunConfig& cfg);
CndModel model_from_config(const RunConfig& cfg, int basis_size);

struct Check {
  std::string name;
  double value = 0;  // measured quantity
  double bound = 0;  // what it was held against
  bool pass = false;
  std::string note;
};

struct RunResult {
  int exit_code = 0;  // 0 all checks passed, 1 otherwise
  int checks = 0;
  int failures = 0;
};

// Executes `kernel-check`, `sample`, `fbm-covariance`, `fock-ccr`,
// `transforms`, `singularity` or `all`, writing the JSON report and CSV
// data under cfg.out.  Check failures are recorded in the artifacts and
// reflected in the exit code; configuration problems throw
// std::invalid_argument instead.  The only timestamp lands in
// run_meta.json, so everything else is byte-stable for a fixed config.
RunResult run_command(const std::string& command, const RunConfig& cfg);

}  // namespace wns
