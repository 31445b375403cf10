#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wns/gaussian.hpp"

namespace wns {

enum class Verdict { equivalent, singular, undecided };

const char* to_string(Verdict v);

// Coordinatewise scale ratios beta_0, beta_1, ... between two product
// Gaussians over a common orthogonal coordinate system.  The closed-form
// families know their own tails; a finite array does not, and can only be
// decided when it already violates positivity.
class BetaSequence {
 public:
  enum class Kind { constant, geometric_defect, array };

  static BetaSequence constant(double beta);
  // beta_k^2 = 1 - c r^k, k = 0, 1, ...; needs 0 <= c < 1, 0 < r < 1
  static BetaSequence geometric_defect(double c, double r);
  static BetaSequence array(std::vector<double> betas);

  Kind kind() const { return kind_; }
  double beta(int k) const;
  int known_length() const;  // array length; -1 when the family is infinite

 private:
  BetaSequence() = default;
  Kind kind_ = Kind::constant;
  double b_ = 1.0, c_ = 0.0, r_ = 0.5;
  std::vector<double> values_;
};

struct DichotomyReport {
  Verdict verdict = Verdict::undecided;
  bool all_positive = true;
  int horizon = 0;         // terms inspected / summed explicitly
  double partial_sum = 0;  // sum_{k < horizon} (1 - beta_k^2)
  double tail = 0;         // remainder past the horizon: exact for the closed
                           // forms (+-inf when divergent), NaN for arrays
  std::string reason;
};

// Equivalent iff every beta_k > 0 and sum_k (1 - beta_k^2) converges;
// singular otherwise.  Finite arrays that stay positive come back undecided
// (the tail is not known), with the partial sum as a trend indicator.
DichotomyReport jorsboe_decide(const BetaSequence& seq, int horizon = 64);

// The two-scale family: the ratio beta = lambda1^2 / lambda2^2 repeats on
// every coordinate, so the laws are equivalent iff lambda1 == lambda2 and
// mutually singular otherwise.
DichotomyReport lambda_family_verdict(double lambda1, double lambda2);

// det(c1)^{1/4} det(c2)^{1/4} / det((c1+c2)/2)^{1/2} for two zero-mean
// Gaussian laws, via Cholesky log-determinants.  Requires both positive
// definite and of equal size.
double hellinger_affinity(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2);

// same, with the covariances taken over a common generator set
double hellinger_affinity(const GaussianField& f1, const GaussianField& f2,
                          const std::vector<TestFunction>& gens);

struct AffinityPoint {
  int n = 0;
  double affinity = 0;
  double log_affinity = 0;
};

// Affinity of the lambda1- and lambda2-scaled laws restricted to the first
// n Hermite directions, n = 1..n_max.  The common covariance factor cancels
// in the ratio, so the curve is (2 l1 l2 / (l1^2 + l2^2))^{n/2} for any
// model; computing it from the actual covariance blocks keeps the code
// honest about that.
std::vector<AffinityPoint> affinity_curve(const CndModel& model, double lambda1,
                                          double lambda2, int n_max);

struct ExperimentReport {
  int n = 0;
  int trials = 0;          // draws per hypothesis
  double threshold = 0;    // likelihood-ratio cut on T = sum of squares
  double error_rate = 0;   // balanced misclassification over 2 * trials draws
  double affinity = 0;     // Hellinger affinity of the two n-dim laws
  double bayes_bound = 0;  // affinity / 2 bounds the optimal error
};

// Draw `trials` paths from each of the lambda1- and lambda2-scaled fields
// over n model-orthonormal directions and classify by the likelihood-ratio
// threshold on the summed squares.  As n grows the laws separate and the
// error rate falls with the affinity; at lambda1 == lambda2 the threshold
// degenerates to n lambda^2 and the error sits at 1/2.
ExperimentReport distinguishability_experiment(const CndModel& model,
                                               double lambda1, double lambda2,
                                               int n, int trials,
                                               std::uint64_t seed);

// convenience form over the plain l2 model (the choice cannot matter: the
// directions are orthonormalized first)
ExperimentReport distinguishability_experiment(double lambda1, double lambda2,
                                               int n, int trials,
                                               std::uint64_t seed);

struct MixtureCompareReport {
  Verdict verdict = Verdict::undecided;
  double u = 0, v = 0;
  double frame_defect = 0;        // two-route covariance check on the probes
  bool frame_ok = false;          // frame_defect <= 1e-8
  double affinity_truncated = 0;  // affinity of the two laws on the probes
  int retained = 0;               // probe directions kept after orthonormalization
  std::string reason;
};

// Compare the u- and v-mixtures (u * l2 + (1-u) * fourier over the same
// atomic mu, u, v in [0,1]).  The covariance of the u-mixture is resolved by
// the countable frame
//   sqrt(u w_a) s(p_a),  sqrt((1-u) w_a) Re \hat{s}(p_a),
//                        sqrt((1-u) w_a) Im \hat{s}(p_a)
// over the atoms (p_a, w_a); frame_defect measures that identity on the
// probe set against the cached-Gram route.  Only atomic measures admit such
// pointwise frames, which is why continuous measures are rejected.  Each
// frame coordinate scales by a constant ratio between the two mixtures (u/v
// on the plain part, (1-u)/(1-v) on the transform part), so the full laws
// are equivalent iff u == v and mutually singular otherwise.
MixtureCompareReport mixture_family_compare(const SpectralMeasure& mu, double u,
                                            double v,
                                            const std::vector<TestFunction>& probes);

// probes default to the unit spans xi_1..xi_modes
MixtureCompareReport mixture_family_compare(const SpectralMeasure& mu, double u,
                                            double v, int modes);

}  // namespace wns
