#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "wns/runner.hpp"

int main(int argc, char** argv) {
  wns::RunConfig cfg = wns::RunConfig::defaults();

  // the config file is folded in first so that explicit flags win
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc)
        cfg = wns::config_from_file(argv[i + 1], cfg);
      else if (a.rfind("--config=", 0) == 0)
        cfg = wns::config_from_file(a.substr(9), cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{
      "white-noise numerics: kernel checks, Gaussian sampling, Fock/CCR "
      "suites, transform identities and the equivalence-vs-singularity "
      "dichotomy"};
  std::string command;
  app.add_option("command", command, "what to run")
      ->required()
      ->check(CLI::IsMember({"kernel-check", "sample", "fbm-covariance",
                             "fock-ccr", "transforms", "singularity", "all"}));
  std::string config_path;
  app.add_option("--config", config_path, "key = value file, # comments");
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--out", cfg.out,
                 "output directory (default from WNS_OUT, else ./out)");
  app.add_option("--lambda", cfg.lambda, "field scale");
  app.add_option("--lambda1", cfg.lambda1, "first scale of the pair");
  app.add_option("--lambda2", cfg.lambda2, "second scale of the pair");
  app.add_option("--model", cfg.model, "l2 | fourier | mixture")
      ->check(CLI::IsMember({"l2", "fourier", "mixture"}));
  app.add_option("--mu", cfg.mu, "lebesgue | powerlaw:H | atoms:FILE");
  app.add_option("--u", cfg.u, "mixture weight in [0, 1]");
  app.add_option("--n", cfg.n, "generator count / affinity horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--modes", cfg.modes, "Fock modes d")
      ->check(CLI::PositiveNumber);
  app.add_option("--degree", cfg.degree, "Fock degree cap K")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--count", cfg.count, "sample rows / experiment trials")
      ->check(CLI::NonNegativeNumber);
  double tol = 0.0;
  app.add_option("--tol", tol, "override the per-check tolerances")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  }
  if (app.count("--tol") > 0) cfg.tol = tol;

  try {
    const wns::RunResult r = wns::run_command(command, cfg);
    std::cout << command << ": " << r.checks << " checks, " << r.failures
              << " failures -> " << cfg.out << "\n";
    return r.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
