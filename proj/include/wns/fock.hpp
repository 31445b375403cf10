#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <json.hpp>

namespace wns {

// Symmetric Fock space over d one-particle modes, truncated at total
// degree K.  Basis vectors E_alpha are indexed by multi-indices alpha
// (alpha_j >= 0, |alpha| <= K) and are orthonormal.
struct Truncation {
  int modes;       // d
  int max_degree;  // K

  Truncation(int d, int K) : modes(d), max_degree(K) {
    if (d < 1 || K < 0) throw std::invalid_argument("Truncation: d >= 1, K >= 0");
    if (K > 30) throw std::invalid_argument("Truncation: K <= 30 keeps alpha! exact");
  }
  bool operator==(const Truncation& o) const {
    return modes == o.modes && max_degree == o.max_degree;
  }
};

using MultiIndex = std::vector<int>;

int degree(const MultiIndex& a);
// alpha! = prod alpha_j!, exact in 128-bit integer arithmetic for K <= 30
double multi_factorial(const MultiIndex& a);

// Enumeration of all |alpha| <= K in graded lexicographic order.
class FockBasis {
 public:
  explicit FockBasis(Truncation t);
  const Truncation& trunc() const { return tr_; }
  int dim() const { return static_cast<int>(list_.size()); }
  const MultiIndex& at(int i) const { return list_[i]; }
  int index(const MultiIndex& a) const;  // -1 outside the truncation

 private:
  Truncation tr_;
  std::vector<MultiIndex> list_;
  std::map<MultiIndex, int> pos_;
};

class FockVector {
 public:
  explicit FockVector(Truncation t) : trunc(t) {}

  Truncation trunc;
  std::map<MultiIndex, std::complex<double>> amps;
  // squared amplitude pushed past the degree cap by creation-type operators
  double dropped_weight = 0.0;

  void add(const MultiIndex& a, std::complex<double> w);
  double norm() const;
  FockVector& operator*=(std::complex<double> z);
  FockVector& operator+=(const FockVector& o);
};

// <v, w> with the first argument conjugated
std::complex<double> inner(const FockVector& v, const FockVector& w);

FockVector basis_state(Truncation t, const MultiIndex& a);

// a_j E_alpha = sqrt(alpha_j) E_{alpha - 1_j}
FockVector annihilate(const FockVector& v, int j);
// a*_j E_alpha = sqrt(alpha_j + 1) E_{alpha + 1_j}; 0 past the cap
FockVector create(const FockVector& v, int j);

// smeared fields, antilinear test slot: a(h) = sum_j conj(h_j) a_j,
// a*(h) = sum_j h_j a*_j.  The scaled pair is a_lambda = lambda a,
// a*_lambda = lambda^{-1} a*.
FockVector annihilate_field(const FockVector& v, const Eigen::VectorXcd& h);
FockVector create_field(const FockVector& v, const Eigen::VectorXcd& h);

// eps(h): amplitude h^alpha / sqrt(alpha!)
FockVector exponential_vector(Truncation t, const Eigen::VectorXcd& h);
// bound on |<eps(h1), eps(h2)>_K - exp<h1, h2>|:
//   sum_{n > K} (|h1| |h2|)^n / n!
double exponential_tail_bound(double norm_h1, double norm_h2, int K);

// second quantization of lambda * identity: degree-n amplitudes scale by
// lambda^n.  Contractive only for lambda <= 1; larger lambda is rejected.
FockVector second_quantization(const FockVector& v, double lambda);

// multiplication by the chaos variable X_h (h real) carried through the
// Hermite recurrence x h_n = h_{n+1} + n h_{n-1} mode by mode
FockVector chaos_multiply(const FockVector& v, const Eigen::VectorXd& h);

using FockOp = std::function<FockVector(const FockVector&)>;

// dense column sweep of a linear operator into a sparse matrix
Eigen::SparseMatrix<std::complex<double>> op_matrix(const FockBasis& basis,
                                                    const FockOp& op);

double frobenius_norm(const Eigen::SparseMatrix<std::complex<double>>& m);

// max over |alpha| <= K-1 of || [a_l(h), a*_l(g)] E_alpha - <h,g> E_alpha ||
// together with the antisymmetric-pair defects [a,a] and [a*,a*]
struct CcrDefects {
  double mixed;
  double ann_pair;
  double cre_pair;
  double worst() const { return std::max({mixed, ann_pair, cre_pair}); }
};
CcrDefects ccr_defects(const FockBasis& basis, const Eigen::VectorXcd& h,
                       const Eigen::VectorXcd& g, double lambda);

// || (lambda a(h))^dagger - lambda^{-1} a*(h) ||_F on the truncation,
// against the predicted |lambda - 1/lambda| * ||a*(h)||_F
struct AdjointReport {
  double obstruction;
  double create_norm;
  double predicted;
};
AdjointReport adjoint_obstruction(const FockBasis& basis,
                                  const Eigen::VectorXcd& h, double lambda);

nlohmann::json to_json(const FockVector& v);
FockVector fock_vector_from_json(const nlohmann::json& j);

}  // namespace wns
