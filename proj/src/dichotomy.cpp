#include "wns/dichotomy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wns {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::singular: return "singular";
    default: return "undecided";
  }
}

BetaSequence BetaSequence::constant(double beta) {
  if (!std::isfinite(beta))
    throw std::invalid_argument("BetaSequence: constant must be finite");
  BetaSequence s;
  s.kind_ = Kind::constant;
  s.b_ = beta;
  return s;
}

BetaSequence BetaSequence::geometric_defect(double c, double r) {
  if (!(c >= 0.0) || !(c < 1.0) || !(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument(
        "BetaSequence: geometric defect needs 0 <= c < 1 and 0 < r < 1");
  BetaSequence s;
  s.kind_ = Kind::geometric_defect;
  s.c_ = c;
  s.r_ = r;
  return s;
}

BetaSequence BetaSequence::array(std::vector<double> betas) {
  if (betas.empty())
    throw std::invalid_argument("BetaSequence: empty array");
  for (double b : betas)
    if (!std::isfinite(b))
      throw std::invalid_argument("BetaSequence: non-finite entry");
  BetaSequence s;
  s.kind_ = Kind::array;
  s.values_ = std::move(betas);
  return s;
}

double BetaSequence::beta(int k) const {
  if (k < 0) throw std::invalid_argument("BetaSequence: k >= 0");
  switch (kind_) {
    case Kind::constant:
      return b_;
    case Kind::geometric_defect:
      return std::sqrt(1.0 - c_ * std::pow(r_, k));
    default:
      if (k >= static_cast<int>(values_.size()))
        throw std::out_of_range("BetaSequence: past the end of the array");
      return values_[static_cast<std::size_t>(k)];
  }
}

int BetaSequence::known_length() const {
  return kind_ == Kind::array ? static_cast<int>(values_.size()) : -1;
}

DichotomyReport jorsboe_decide(const BetaSequence& seq, int horizon) {
  if (horizon < 1) throw std::invalid_argument("jorsboe_decide: horizon >= 1");
  const double inf = std::numeric_limits<double>::infinity();
  DichotomyReport rep;
  rep.horizon = seq.known_length() < 0
                    ? horizon
                    : std::min(horizon, seq.known_length());

  double last_term = 0.0;
  for (int k = 0; k < rep.horizon; ++k) {
    const double b = seq.beta(k);
    if (!(b > 0.0)) rep.all_positive = false;
    last_term = 1.0 - b * b;
    rep.partial_sum += last_term;
  }

  std::ostringstream why;
  switch (seq.kind()) {
    case BetaSequence::Kind::constant: {
      const double b = seq.beta(0);
      if (!(b > 0.0)) {
        rep.verdict = Verdict::singular;
        rep.tail = inf;
        why << "constant ratio " << b << " is not positive";
      } else if (b == 1.0) {
        rep.verdict = Verdict::equivalent;
        rep.tail = 0.0;
        why << "every ratio equals 1: the defect series vanishes";
      } else {
        rep.verdict = Verdict::singular;
        rep.tail = last_term > 0.0 ? inf : -inf;
        why << "the defect 1 - beta^2 = " << last_term
            << " repeats on every coordinate, so the series diverges";
      }
      break;
    }
    case BetaSequence::Kind::geometric_defect: {
      // terms are c r^k: positive by construction and summable to c/(1-r)
      const double c = 1.0 - seq.beta(0) * seq.beta(0);
      const double r =
          c > 0.0 ? (1.0 - seq.beta(1) * seq.beta(1)) / c : 0.5;
      rep.verdict = Verdict::equivalent;
      rep.tail = c * std::pow(r, rep.horizon) / (1.0 - r);
      why << "geometric defects sum to " << c / (1.0 - r);
      break;
    }
    default: {
      if (!rep.all_positive) {
        rep.verdict = Verdict::singular;
        rep.tail = inf;
        why << "a ratio <= 0 already forces disjoint supports";
      } else {
        rep.verdict = Verdict::undecided;
        rep.tail = std::numeric_limits<double>::quiet_NaN();
        why << "finite prefix only: partial sum " << rep.partial_sum
            << ", last defect " << last_term
            << "; the tail decides and is not known";
      }
      break;
    }
  }
  rep.reason = why.str();
  return rep;
}

DichotomyReport lambda_family_verdict(double lambda1, double lambda2) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1) || !(lambda2 > 0.0) ||
      !std::isfinite(lambda2))
    throw std::invalid_argument("lambda_family_verdict: lambdas > 0");
  const double beta = (lambda1 * lambda1) / (lambda2 * lambda2);
  DichotomyReport rep = jorsboe_decide(BetaSequence::constant(beta));
  std::ostringstream why;
  why << "beta = lambda1^2 / lambda2^2 = " << beta << " on every coordinate; "
      << rep.reason;
  rep.reason = why.str();
  return rep;
}

double hellinger_affinity(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2) {
  if (c1.rows() != c1.cols() || c2.rows() != c2.cols() ||
      c1.rows() != c2.rows() || c1.rows() == 0)
    throw std::invalid_argument("hellinger_affinity: equal square sizes");
  const auto log_det = [](const Eigen::MatrixXd& c) {
    const Eigen::LLT<Eigen::MatrixXd> llt(c);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("hellinger_affinity: not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    return 2.0 * l.diagonal().array().log().sum();
  };
  const double mid = log_det(0.5 * (c1 + c2));
  return std::exp(0.25 * log_det(c1) + 0.25 * log_det(c2) - 0.5 * mid);
}

double hellinger_affinity(const GaussianField& f1, const GaussianField& f2,
                          const std::vector<TestFunction>& gens) {
  return hellinger_affinity(covariance_matrix(f1, gens),
                            covariance_matrix(f2, gens));
}

std::vector<AffinityPoint> affinity_curve(const CndModel& model, double lambda1,
                                          double lambda2, int n_max) {
  if (n_max < 1) throw std::invalid_argument("affinity_curve: n_max >= 1");
  if (model.is_quadratic() && model.basis_size() < n_max)
    throw std::invalid_argument("affinity_curve: model basis too small");
  const int dim = model.is_quadratic() ? model.basis_size() : n_max;
  const auto gens = hermite_basis_spans(n_max, dim);
  const Eigen::MatrixXd c1 =
      covariance_matrix(GaussianField(model, lambda1), gens);
  const Eigen::MatrixXd c2 =
      covariance_matrix(GaussianField(model, lambda2), gens);
  std::vector<AffinityPoint> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double a =
        hellinger_affinity(c1.topLeftCorner(n, n), c2.topLeftCorner(n, n));
    out.push_back({n, a, std::log(a)});
  }
  return out;
}

ExperimentReport distinguishability_experiment(const CndModel& model,
                                               double lambda1, double lambda2,
                                               int n, int trials,
                                               std::uint64_t seed) {
  if (n < 1 || trials < 1)
    throw std::invalid_argument("distinguishability_experiment: n, trials >= 1");
  if (model.is_quadratic() && model.basis_size() < n)
    throw std::invalid_argument("distinguishability_experiment: basis too small");

  const int dim = model.is_quadratic() ? model.basis_size() : n;
  const GaussianField unit(model, 1.0);
  const auto ortho = gamma_orthonormalize(unit, hermite_basis_spans(n, dim));
  if (static_cast<int>(ortho.size()) != n)
    throw std::runtime_error(
        "distinguishability_experiment: degenerate directions");

  ExperimentReport rep;
  rep.n = n;
  rep.trials = trials;
  if (lambda1 == lambda2) {
    rep.threshold = n * lambda1 * lambda1;
  } else {
    const double v1 = lambda1 * lambda1, v2 = lambda2 * lambda2;
    rep.threshold = n * v1 * v2 * 2.0 * std::log(lambda2 / lambda1) / (v2 - v1);
  }
  const double rho = 2.0 * lambda1 * lambda2 /
                     (lambda1 * lambda1 + lambda2 * lambda2);
  rep.affinity = std::pow(rho, 0.5 * n);
  rep.bayes_bound = 0.5 * rep.affinity;

  const Eigen::MatrixXd x1 =
      sample(GaussianField(model, lambda1), ortho, trials, seed);
  const Eigen::MatrixXd x2 =
      sample(GaussianField(model, lambda2), ortho, trials, seed + 1);
  // pick the larger-lambda hypothesis when T lands above the cut; ties go to
  // the second hypothesis, which keeps the equal-lambda error at 1/2
  const bool second_high = !(lambda2 < lambda1);
  int mis = 0;
  for (int t = 0; t < trials; ++t) {
    const double t1 = x1.row(t).squaredNorm();
    const double t2 = x2.row(t).squaredNorm();
    const bool one_as_two = second_high ? (t1 > rep.threshold)
                                        : (t1 < rep.threshold);
    const bool two_as_two = second_high ? (t2 > rep.threshold)
                                        : (t2 < rep.threshold);
    mis += one_as_two ? 1 : 0;
    mis += two_as_two ? 0 : 1;
  }
  rep.error_rate = static_cast<double>(mis) / (2.0 * trials);
  return rep;
}

ExperimentReport distinguishability_experiment(double lambda1, double lambda2,
                                               int n, int trials,
                                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("distinguishability_experiment: n >= 1");
  return distinguishability_experiment(
      CndModel::l2(SpectralMeasure::lebesgue(), n), lambda1, lambda2, n,
      trials, seed);
}

MixtureCompareReport mixture_family_compare(
    const SpectralMeasure& mu, double u, double v,
    const std::vector<TestFunction>& probes) {
  if (mu.kind() != SpectralMeasure::Kind::atoms)
    throw std::invalid_argument(
        "mixture_family_compare: atomic mu only (a continuous measure such "
        "as Lebesgue admits no pointwise frame)");
  if (!(u >= 0.0) || !(u <= 1.0) || !(v >= 0.0) || !(v <= 1.0))
    throw std::invalid_argument("mixture_family_compare: u, v in [0, 1]");
  if (probes.empty())
    throw std::invalid_argument("mixture_family_compare: no probes");
  for (const auto& s : probes)
    if (!s.is_span() || !s.is_real() || s.dim() != probes.front().dim())
      throw std::invalid_argument(
          "mixture_family_compare: probes must be real spans of one size");

  const int np = static_cast<int>(probes.size());
  const int dim = probes.front().dim();
  const auto& pts = mu.points();
  const auto& w = mu.masses();

  // frame route: every probe reduced to its atom samples, plain and
  // transformed
  Eigen::MatrixXd plain(np, pts.size());
  Eigen::MatrixXd tre(np, pts.size()), tim(np, pts.size());
  for (int i = 0; i < np; ++i) {
    const TestFunction hat = fourier_transform(probes[i]);
    for (Eigen::Index a = 0; a < pts.size(); ++a) {
      const double rw = std::sqrt(w[a]);
      plain(i, a) = rw * std::sqrt(u) * probes[i](pts[a]).real();
      const std::complex<double> h = hat(pts[a]);
      tre(i, a) = rw * std::sqrt(1.0 - u) * h.real();
      tim(i, a) = rw * std::sqrt(1.0 - u) * h.imag();
    }
  }
  const Eigen::MatrixXd frame_gram = plain * plain.transpose() +
                                     tre * tre.transpose() +
                                     tim * tim.transpose();

  const CndModel model_u = CndModel::mixture(mu, u, dim);
  const CndModel model_v = CndModel::mixture(mu, v, dim);
  Eigen::MatrixXd direct(np, np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      direct(i, j) = model_u.bilinear(probes[i], probes[j]);

  MixtureCompareReport rep;
  rep.u = u;
  rep.v = v;
  rep.frame_defect = (frame_gram - direct).cwiseAbs().maxCoeff() /
                     std::max(1.0, direct.cwiseAbs().maxCoeff());
  rep.frame_ok = rep.frame_defect <= 1e-8;

  const GaussianField fu(model_u, 1.0);
  const auto ortho = gamma_orthonormalize(fu, probes);
  rep.retained = static_cast<int>(ortho.size());
  if (rep.retained > 0) {
    const Eigen::MatrixXd cu = covariance_matrix(fu, ortho);
    const Eigen::MatrixXd cv =
        covariance_matrix(GaussianField(model_v, 1.0), ortho);
    rep.affinity_truncated = hellinger_affinity(cu, cv);
  }

  std::ostringstream why;
  if (u == v) {
    rep.verdict = Verdict::equivalent;
    why << "identical mixtures";
  } else {
    rep.verdict = Verdict::singular;
    why << "every plain frame coordinate scales by u/v = " << u / v
        << " and every transform coordinate by (1-u)/(1-v) = "
        << (1.0 - u) / (1.0 - v)
        << "; the constant defects repeat, so the series diverges";
  }
  if (!rep.frame_ok)
    why << "; note: the frame identity fails for this mu (defect "
        << rep.frame_defect << ")";
  rep.reason = why.str();
  return rep;
}

MixtureCompareReport mixture_family_compare(const SpectralMeasure& mu, double u,
                                            double v, int modes) {
  return mixture_family_compare(mu, u, v, hermite_basis_spans(modes));
}

}  // namespace wns
