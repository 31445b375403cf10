#include "wns/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wns/dichotomy.hpp"
#include "wns/rng.hpp"
#include "wns/transforms.hpp"

namespace fs = std::filesystem;

namespace wns {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
  }
}

// short label for embedding parameter values into check names
std::string label(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

TestFunction random_span(int dim, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  v.normalize();
  return TestFunction::hermite_span(v);
}

Eigen::VectorXcd random_cvec(int dim, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = {rng.normal(), rng.normal()};
  v /= v.norm();
  return v;
}

std::string matrix_csv(const Eigen::MatrixXd& m, const std::string& prefix) {
  std::ostringstream os;
  os.precision(17);
  os << "row";
  for (Eigen::Index k = 0; k < m.cols(); ++k) os << "," << prefix << k;
  os << "\n";
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    os << j;
    for (Eigen::Index k = 0; k < m.cols(); ++k) os << "," << m(j, k);
    os << "\n";
  }
  return os.str();
}

struct Ctx {
  const RunConfig& cfg;
  fs::path dir;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();

  double tol_or(double fallback) const { return cfg.tol.value_or(fallback); }

  void check(std::string name, double value, double bound, bool pass,
             std::string note = "") {
    checks.push_back({std::move(name), value, bound, pass, std::move(note)});
  }
  // value must not exceed bound
  void check_le(std::string name, double value, double bound,
                std::string note = "") {
    check(std::move(name), value, bound, value <= bound, std::move(note));
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
  }
};

// ---------------------------------------------------------------- kernel-check

void cmd_kernel_check(Ctx& c) {
  const CndModel model = model_from_config(c.cfg);
  const int D = model.basis_size();

  std::vector<TestFunction> gens;
  for (int i = 0; i < 8; ++i)
    gens.push_back(random_span(D, c.cfg.seed, 100 + i));

  const CndCheckResult cnd = check_cnd(model, gens, 64, c.cfg.seed);
  c.check("cnd_form_nonpositive", cnd.worst, 0.0, cnd.pass);
  c.extra["cnd_witness"] = cnd.witness;

  const KernelGram phi = build_phi_gram(model, gens);
  c.check("phi_gram_psd", phi.min_eig, -1e-9 * phi.spectral_radius, phi.psd());
  c.write("phi_gram.csv", to_csv(phi));
  c.extra["phi_gram"] = to_json(phi);

  auto q_summaries = nlohmann::json::array();
  for (const double lam :
       {0.5 * c.cfg.lambda, c.cfg.lambda, 2.0 * c.cfg.lambda}) {
    const KernelGram q = build_q_gram(model, lam, gens);
    c.check("q_gram_psd_lambda_" + label(lam), q.min_eig,
            -1e-9 * q.spectral_radius, q.psd());
    if (lam == c.cfg.lambda) c.write("q_gram.csv", to_csv(q));
    q_summaries.push_back(to_json(q));
  }
  c.extra["q_grams"] = std::move(q_summaries);

  // |N(alpha s) - alpha^2 N(s)| on random dilations
  CounterRng rng(c.cfg.seed, 7);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const TestFunction s = random_span(D, c.cfg.seed, 200 + t);
    const double alpha = 4.0 * rng.uniform() - 2.0;
    const double lhs = model.evaluate(combine(alpha, s, 0.0, s));
    const double rhs = alpha * alpha * model.evaluate(s);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  c.check_le("quadratic_scaling", worst, c.tol_or(1e-9));
}

// ---------------------------------------------------------------------- sample

void cmd_sample(Ctx& c) {
  if (c.cfg.n > c.cfg.basis)
    throw std::invalid_argument("sample: n exceeds the basis size");
  const CndModel model = model_from_config(c.cfg);
  const GaussianField f(model, c.cfg.lambda);
  const auto gens = hermite_basis_spans(c.cfg.n, model.basis_size());

  const Eigen::MatrixXd cov = covariance_matrix(f, gens);
  c.write("covariance.csv", matrix_csv(cov, "c"));

  const Eigen::MatrixXd x = sample(f, gens, c.cfg.count, c.cfg.seed);
  {
    std::ostringstream os;
    os.precision(17);
    for (int k = 0; k < c.cfg.n; ++k) os << (k ? "," : "") << "x" << k;
    os << "\n";
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (int k = 0; k < c.cfg.n; ++k) os << (k ? "," : "") << x(r, k);
      os << "\n";
    }
    c.write("samples.csv", os.str());
  }

  nlohmann::json moments = nlohmann::json::object();
  if (c.cfg.count >= 1000) {
    // empirical covariance against the kernel, entrywise in standard errors
    const Eigen::MatrixXd emp = x.transpose() * x / c.cfg.count;
    double worst_z = 0.0;
    for (int i = 0; i < c.cfg.n; ++i)
      for (int j = 0; j < c.cfg.n; ++j) {
        const double se = std::sqrt(
            (cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / c.cfg.count);
        worst_z = std::max(worst_z, std::abs(emp(i, j) - cov(i, j)) / se);
      }
    c.check_le("covariance_mc_z", worst_z, 6.0);
  }
  if (c.cfg.count > 0) {
    // scalar moments at a fixed budget, independent of the batch size
    const int m_scalar = 1000000;
    const TestFunction& s = gens.front();
    const Eigen::VectorXd xs =
        sample_scalar(f, s, m_scalar, c.cfg.seed + 0x5ca1a5);
    std::array<double, 7> sums{};
    for (Eigen::Index r = 0; r < xs.size(); ++r) {
      double p = 1.0;
      for (int k = 1; k <= 6; ++k) {
        p *= xs[r];
        sums[k] += p;
      }
    }
    for (int k = 1; k <= 6; ++k) {
      const double emp = sums[k] / m_scalar;
      const double exact = moment(f, s, k);
      const double var = moment(f, s, 2 * k) - exact * exact;
      const double se = std::sqrt(var / m_scalar);
      const bool pass = std::abs(emp - exact) <= 4.0 * se;
      moments[std::to_string(k)] = {{"empirical", emp},
                                    {"exact", exact},
                                    {"se", se},
                                    {"pass", pass}};
      c.check("moment_order_" + std::to_string(k), std::abs(emp - exact),
              4.0 * se, pass);
    }
    c.extra["scalar_draws"] = m_scalar;
  }
  c.extra["lambda"] = c.cfg.lambda;
  c.extra["n"] = c.cfg.n;
  c.extra["seed"] = c.cfg.seed;
  c.extra["moments"] = std::move(moments);
}

// -------------------------------------------------------------- fbm-covariance

void cmd_fbm_covariance(Ctx& c) {
  const std::array<double, 5> ts = {0.4, 0.8, 1.2, 1.6, 2.0};
  struct Family {
    std::string name;
    double H;
    SpectralMeasure mu;
    double tol;
  };
  const std::vector<Family> fams = {
      {"lebesgue", 0.5, SpectralMeasure::lebesgue(), c.tol_or(1e-5)},
      {"powerlaw_0.25", 0.25, SpectralMeasure::power_law(0.25), c.tol_or(1e-3)},
      {"powerlaw_0.5", 0.5, SpectralMeasure::power_law(0.5), c.tol_or(1e-3)},
      {"powerlaw_0.75", 0.75, SpectralMeasure::power_law(0.75), c.tol_or(1e-3)},
  };

  std::ostringstream grid;
  grid.precision(17);
  grid << "family,H,t1,t2,value,error_estimate,fit,rel_err\n";
  double worst_imag = 0.0;
  for (const Family& fam : fams) {
    Eigen::MatrixXd val(ts.size(), ts.size());
    Eigen::MatrixXd err(ts.size(), ts.size());
    Eigen::MatrixXd ref(ts.size(), ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const PairingValue p = indicator_pairing(fam.mu, ts[i], ts[j]);
        worst_imag = std::max(worst_imag, std::abs(p.value.imag()));
        val(i, j) = p.value.real();
        err(i, j) = p.error_estimate;
        const double h2 = 2.0 * fam.H;
        ref(i, j) = 0.5 * (std::pow(ts[i], h2) + std::pow(ts[j], h2) -
                           std::pow(std::abs(ts[i] - ts[j]), h2));
      }
    // proportionality: least-squares slope through the origin
    const double kappa =
        (val.array() * ref.array()).sum() / ref.array().square().sum();
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const double rel =
            std::abs(val(i, j) - kappa * ref(i, j)) / (kappa * ref(i, j));
        worst = std::max(worst, rel);
        grid << fam.name << "," << fam.H << "," << ts[i] << "," << ts[j] << ","
             << val(i, j) << "," << err(i, j) << "," << kappa * ref(i, j)
             << "," << rel << "\n";
      }
    c.check_le(fam.name + "_proportional", worst, fam.tol);
    c.extra["kappa_" + fam.name] = kappa;
  }
  c.check_le("pairing_imag", worst_imag, 1e-9);
  c.write("fbm_grid.csv", grid.str());
}

// -------------------------------------------------------------------- fock-ccr

void cmd_fock_ccr(Ctx& c) {
  const Truncation t(c.cfg.modes, c.cfg.degree);
  const FockBasis basis(t);
  const Eigen::VectorXcd h = random_cvec(t.modes, c.cfg.seed, 301);
  const Eigen::VectorXcd g = random_cvec(t.modes, c.cfg.seed, 302);

  std::vector<double> lambdas = {0.5, 1.0, 3.0};
  if (std::find(lambdas.begin(), lambdas.end(), c.cfg.lambda) == lambdas.end())
    lambdas.push_back(c.cfg.lambda);

  std::ostringstream csv;
  csv.precision(17);
  csv << "lambda,mixed,ann_pair,cre_pair,adjoint_obstruction,adjoint_predicted\n";
  for (const double lam : lambdas) {
    const CcrDefects def = ccr_defects(basis, h, g, lam);
    c.check_le("ccr_defect_lambda_" + label(lam), def.worst(),
               c.tol_or(1e-12));
    const AdjointReport adj = adjoint_obstruction(basis, h, lam);
    c.check_le("adjoint_prediction_lambda_" + label(lam),
               std::abs(adj.obstruction - adj.predicted), c.tol_or(1e-10));
    if (lam == 1.0)
      c.check_le("adjoint_vanishes_at_unit", adj.obstruction, 1e-12);
    else
      c.check("adjoint_nonzero_lambda_" + label(lam), adj.obstruction, 1e-6,
              adj.obstruction > 1e-6);
    csv << lam << "," << def.mixed << "," << def.ann_pair << ","
        << def.cre_pair << "," << adj.obstruction << "," << adj.predicted
        << "\n";
  }
  c.write("ccr_defects.csv", csv.str());

  // exponential vectors against exp of the one-particle inner product
  double worst_excess = -1.0;
  for (int p = 0; p < 10; ++p) {
    CounterRng rng(c.cfg.seed, 400 + p);
    Eigen::VectorXcd h1 = random_cvec(t.modes, c.cfg.seed, 500 + p);
    Eigen::VectorXcd h2 = random_cvec(t.modes, c.cfg.seed, 600 + p);
    h1 *= rng.uniform();
    h2 *= rng.uniform();
    const FockVector e1 = exponential_vector(t, h1);
    const FockVector e2 = exponential_vector(t, h2);
    const std::complex<double> ip = h1.dot(h2);
    const double diff = std::abs(inner(e1, e2) - std::exp(ip));
    const double tail =
        exponential_tail_bound(h1.norm(), h2.norm(), t.max_degree);
    worst_excess = std::max(worst_excess, diff - tail);
  }
  c.check_le("exponential_gram_tail", worst_excess, c.tol_or(1e-12));

  const FockVector v = exponential_vector(t, (0.8 * h).eval());
  const FockVector contracted = second_quantization(v, 0.5);
  c.check_le("second_quantization_contractive", contracted.norm(),
             v.norm() + 1e-12);
}

// ------------------------------------------------------------------ transforms

void cmd_transforms(Ctx& c) {
  const CndModel model = model_from_config(c.cfg);
  const GaussianField f(model, c.cfg.lambda);
  const int D = model.basis_size();

  std::vector<TestFunction> s;
  for (int i = 0; i < 5; ++i)
    s.push_back(random_span(D, c.cfg.seed, 700 + i));
  std::vector<TestFunction> probes;
  for (int i = 0; i < 5; ++i)
    probes.push_back(random_span(D, c.cfg.seed, 800 + i));

  const double lam2 = c.cfg.lambda * c.cfg.lambda;

  double worst = 0.0;
  for (const auto& si : s) {
    const double got = norm_squared(f, heat_exp(si));
    const double want = std::exp(lam2 * model.evaluate(si));
    worst = std::max(worst, std::abs(got - want) / want);
  }
  c.check_le("heat_norm_closed_form", worst, c.tol_or(1e-10));

  // Wick-corrected exponentials reproduce the exponentiated covariance
  std::vector<ExpCombo> wicks, heats;
  for (int i = 0; i < 4; ++i) {
    wicks.push_back(wick_exp(f, s[i]));
    heats.push_back(heat_exp(s[i]));
  }
  const Eigen::MatrixXcd wg = gram(f, wicks);
  const Eigen::MatrixXcd hg = gram(f, heats);
  std::ostringstream wcsv;
  wcsv.precision(17);
  wcsv << "i,j,re,im,reference\n";
  worst = 0.0;
  double heat_gap = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double refv = std::exp(lam2 * model.bilinear(s[i], s[j]));
      worst = std::max(worst, std::abs(wg(i, j) - refv) / refv);
      const double hnorm = std::sqrt(norm_squared(f, heats[i]) *
                                     norm_squared(f, heats[j]));
      heat_gap = std::max(
          heat_gap, std::abs(hg(i, j) / hnorm - refv / std::sqrt(
              std::exp(lam2 * model.evaluate(s[i])) *
              std::exp(lam2 * model.evaluate(s[j])))));
      wcsv << i << "," << j << "," << wg(i, j).real() << ","
           << wg(i, j).imag() << "," << refv << "\n";
    }
  c.check_le("wick_gram_exponential", worst, c.tol_or(1e-8));
  // documented gap, not an assertion: the plain heat Gram does not match
  c.extra["heat_normalized_gram_gap"] = heat_gap;
  c.write("wick_gram.csv", wcsv.str());

  worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::complex<double> lhs =
          t_transform_exp(f, {0.0, -1.0}, s[i], probes[j]);
      const double rhs = q_kernel_at(f, s[i], probes[j]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  c.check_le("t_kernel_identity", worst, c.tol_or(1e-12));

  std::ostringstream rcsv;
  rcsv.precision(17);
  rcsv << "i,j,re_via,im_via,re_closed,im_closed,abs_diff\n";
  worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const RanTransformValue rv = r_transform_exp(f, s[i], probes[j]);
      const double d = std::abs(rv.via_transform - rv.closed_form);
      worst = std::max(worst, d);
      rcsv << i << "," << j << "," << rv.via_transform.real() << ","
           << rv.via_transform.imag() << "," << rv.closed_form.real() << ","
           << rv.closed_form.imag() << "," << d << "\n";
    }
  c.check_le("r_two_routes", worst, c.tol_or(1e-10));
  c.write("r_grid.csv", rcsv.str());

  CounterRng rng(c.cfg.seed, 900);
  Eigen::VectorXd hr(c.cfg.modes);
  for (int i = 0; i < c.cfg.modes; ++i) hr[i] = rng.normal();
  hr.normalize();
  const IntertwiningReport ir =
      intertwining_check(Truncation(c.cfg.modes, c.cfg.degree), hr);
  c.check_le("multiplication_intertwines", ir.dist_sum, c.tol_or(1e-10));
  c.check_le("creation_gap_equals_ann_norm",
             std::abs(ir.dist_create_only - ir.ann_norm), c.tol_or(1e-10));
}

// ----------------------------------------------------------------- singularity

void cmd_singularity(Ctx& c) {
  const double l1 = c.cfg.lambda1, l2 = c.cfg.lambda2;
  const DichotomyReport rep = lambda_family_verdict(l1, l2);
  const Verdict want = l1 == l2 ? Verdict::equivalent : Verdict::singular;
  c.check("lambda_verdict_exact", 0.0, 0.0, rep.verdict == want,
          std::string(to_string(rep.verdict)) + ": " + rep.reason);
  c.extra["verdict"] = to_string(rep.verdict);
  c.extra["reason"] = rep.reason;

  const int n = c.cfg.n;
  const CndModel model = model_from_config(c.cfg, std::max(c.cfg.basis, n));
  const auto curve = affinity_curve(model, l1, l2, n);
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,affinity,log_affinity\n";
  const double rho = 2.0 * l1 * l2 / (l1 * l1 + l2 * l2);
  double worst = 0.0;
  bool decreasing = true;
  for (const AffinityPoint& p : curve) {
    csv << p.n << "," << p.affinity << "," << p.log_affinity << "\n";
    worst = std::max(worst,
                     std::abs(p.affinity - std::pow(rho, 0.5 * p.n)));
    if (p.n > 1 && !(p.affinity < curve[p.n - 2].affinity)) decreasing = false;
  }
  c.write("affinity_curve.csv", csv.str());
  c.check_le("affinity_closed_form", worst, c.tol_or(1e-12));
  if (l1 != l2)
    c.check("affinity_strictly_decreasing", decreasing ? 1.0 : 0.0, 1.0,
            decreasing);
  c.extra["affinity"] = curve.back().affinity;
  c.extra["n"] = n;

  if (c.cfg.count >= 2) {
    const ExperimentReport ex = distinguishability_experiment(
        model, l1, l2, n, c.cfg.count, c.cfg.seed);
    const double se = std::sqrt(0.25 / (2.0 * ex.trials));
    if (l1 == l2)
      c.check_le("experiment_error_half", std::abs(ex.error_rate - 0.5),
                 4.0 * se);
    else
      c.check_le("experiment_error_bounded", ex.error_rate,
                 ex.bayes_bound + 4.0 * se);
    c.extra["experiment"] = {{"n", ex.n},
                             {"trials", ex.trials},
                             {"threshold", ex.threshold},
                             {"error_rate", ex.error_rate},
                             {"affinity", ex.affinity},
                             {"bayes_bound", ex.bayes_bound}};
  }
}

// ------------------------------------------------------------------- plumbing

std::string report_stem(const std::string& command) {
  std::string s = command;
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

RunResult exec_one(const std::string& command, const RunConfig& cfg,
                   const fs::path& dir) {
  Ctx ctx{cfg, dir, {}, nlohmann::json::object()};
  try {
    if (command == "kernel-check")
      cmd_kernel_check(ctx);
    else if (command == "sample")
      cmd_sample(ctx);
    else if (command == "fbm-covariance")
      cmd_fbm_covariance(ctx);
    else if (command == "fock-ccr")
      cmd_fock_ccr(ctx);
    else if (command == "transforms")
      cmd_transforms(ctx);
    else if (command == "singularity")
      cmd_singularity(ctx);
    else
      throw std::invalid_argument("unknown command '" + command + "'");
  } catch (const std::runtime_error& e) {
    // numeric failure: record it, keep whatever artifacts exist, fail the run
    ctx.check("unhandled_numeric_error", 0.0, 0.0, false, e.what());
  }

  RunResult res;
  res.checks = static_cast<int>(ctx.checks.size());
  for (const Check& ch : ctx.checks)
    if (!ch.pass) ++res.failures;
  res.exit_code = res.failures == 0 ? 0 : 1;

  nlohmann::json report = std::move(ctx.extra);
  report["schema_version"] = 1;
  report["command"] = command;
  report["config"] = cfg.echo();
  report["pass"] = res.failures == 0;
  auto arr = nlohmann::json::array();
  for (const Check& ch : ctx.checks) {
    nlohmann::json j = {{"name", ch.name},
                        {"value", ch.value},
                        {"bound", ch.bound},
                        {"pass", ch.pass}};
    if (!ch.note.empty()) j["note"] = ch.note;
    arr.push_back(std::move(j));
  }
  report["checks"] = std::move(arr);
  ctx.write(report_stem(command) + ".json", report.dump(2) + "\n");
  return res;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  if (const char* e = std::getenv("WNS_OUT"); e != nullptr && *e != '\0')
    c.out = e;
  return c;
}

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "seed") {
    try {
      seed = std::stoull(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad integer for 'seed': " + value);
    }
  } else if (key == "out") {
    if (value.empty()) throw std::invalid_argument("config: empty 'out'");
    out = value;
  } else if (key == "lambda") {
    lambda = parse_double(key, value);
  } else if (key == "lambda1") {
    lambda1 = parse_double(key, value);
  } else if (key == "lambda2") {
    lambda2 = parse_double(key, value);
  } else if (key == "model") {
    if (value != "l2" && value != "fourier" && value != "mixture")
      throw std::invalid_argument("config: model must be l2|fourier|mixture");
    model = value;
  } else if (key == "mu") {
    mu = value;  // validated when the measure is built
  } else if (key == "u") {
    u = parse_double(key, value);
  } else if (key == "n") {
    n = parse_int(key, value);
    if (n < 1) throw std::invalid_argument("config: n >= 1");
  } else if (key == "modes") {
    modes = parse_int(key, value);
    if (modes < 1) throw std::invalid_argument("config: modes >= 1");
  } else if (key == "degree") {
    degree = parse_int(key, value);
    if (degree < 0) throw std::invalid_argument("config: degree >= 0");
  } else if (key == "count") {
    count = parse_int(key, value);
    if (count < 0) throw std::invalid_argument("config: count >= 0");
  } else if (key == "basis") {
    basis = parse_int(key, value);
    if (basis < 1) throw std::invalid_argument("config: basis >= 1");
  } else if (key == "tol") {
    tol = parse_double(key, value);
    if (!(*tol > 0.0)) throw std::invalid_argument("config: tol > 0");
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

nlohmann::json RunConfig::echo() const {
  nlohmann::json j = {{"seed", seed},       {"out", out},
                      {"lambda", lambda},   {"lambda1", lambda1},
                      {"lambda2", lambda2}, {"model", model},
                      {"mu", mu},           {"u", u},
                      {"n", n},             {"modes", modes},
                      {"degree", degree},   {"count", count},
                      {"basis", basis}};
  if (tol)
    j["tol"] = *tol;
  else
    j["tol"] = nullptr;
  return j;
}

RunConfig config_from_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    base.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

SpectralMeasure measure_from_spec(const std::string& spec) {
  if (spec == "lebesgue") return SpectralMeasure::lebesgue();
  if (spec.rfind("powerlaw:", 0) == 0) {
    const double H = parse_double("mu", spec.substr(9));
    if (!(H > 0.0) || !(H < 1.0))
      throw std::invalid_argument("config: powerlaw needs H in (0, 1)");
    return SpectralMeasure::power_law(H);
  }
  if (spec.rfind("atoms:", 0) == 0) {
    const std::string path = spec.substr(6);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open atoms file " + path);
    nlohmann::json j;
    try {
      f >> j;
      const auto pv = j.at("points").get<std::vector<double>>();
      const auto mv = j.at("masses").get<std::vector<double>>();
      return SpectralMeasure::atoms(
          Eigen::Map<const Eigen::VectorXd>(pv.data(), pv.size()),
          Eigen::Map<const Eigen::VectorXd>(mv.data(), mv.size()));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config: bad atoms file " + path + ": " +
                                  e.what());
    }
  }
  throw std::invalid_argument("config: mu must be lebesgue|powerlaw:H|atoms:FILE");
}

CndModel model_from_config(const RunConfig& cfg, int basis_size) {
  const SpectralMeasure mu = measure_from_spec(cfg.mu);
  if (cfg.model == "l2") return CndModel::l2(mu, basis_size);
  if (cfg.model == "fourier") return CndModel::fourier(mu, basis_size);
  if (cfg.model == "mixture") return CndModel::mixture(mu, cfg.u, basis_size);
  throw std::invalid_argument("config: model must be l2|fourier|mixture");
}

CndModel model_from_config(const RunConfig& cfg) {
  return model_from_config(cfg, cfg.basis);
}

RunResult run_command(const std::string& command, const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  fs::create_directories(dir);

  static const std::array<const char*, 6> kAll = {
      "kernel-check", "sample",     "fbm-covariance",
      "fock-ccr",     "transforms", "singularity"};

  RunResult total;
  nlohmann::json per_command = nlohmann::json::object();
  if (command == "all") {
    for (const char* name : kAll) {
      const RunResult r = exec_one(name, cfg, dir);
      total.checks += r.checks;
      total.failures += r.failures;
      per_command[name] = {{"checks", r.checks},
                           {"failures", r.failures},
                           {"pass", r.failures == 0}};
    }
    total.exit_code = total.failures == 0 ? 0 : 1;
    nlohmann::json agg = {{"schema_version", 1},
                          {"command", "all"},
                          {"config", cfg.echo()},
                          {"commands", per_command},
                          {"pass", total.failures == 0}};
    std::ofstream f(dir / "all.json", std::ios::binary);
    f << agg.dump(2) << "\n";
  } else {
    total = exec_one(command, cfg, dir);
  }

  // the one artifact allowed to differ between identical runs
  nlohmann::json meta = {{"schema_version", 1},
                         {"command", command},
                         {"timestamp_utc", utc_now()},
                         {"exit_code", total.exit_code},
                         {"checks", total.checks},
                         {"failures", total.failures}};
  std::ofstream f(dir / "run_meta.json", std::ios::binary);
  f << meta.dump(2) << "\n";
  return total;
}

}  // namespace wns
