#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wns/cnd.hpp"

namespace wns {

// The centered Gaussian process X_s indexed by test functions, with
//   Cov(X_{s1}, X_{s2}) = lambda^2/4 (N(s1+s2) - N(s1-s2))
// and Var(X_s) = lambda^2 N(s).
struct GaussianField {
  CndModel model;
  double lambda = 1.0;

  GaussianField(CndModel m, double lam) : model(std::move(m)), lambda(lam) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("GaussianField: lambda > 0");
  }
};

double variance(const GaussianField& f, const TestFunction& s);
double covariance(const GaussianField& f, const TestFunction& s1,
                  const TestFunction& s2);

// Gram of the covariance over generators; throws if the result fails the
// eigenvalue PSD check (min eig >= -1e-9 * spectral radius).
Eigen::MatrixXd covariance_matrix(const GaussianField& f,
                                  const std::vector<TestFunction>& gens);

// E[X_s^order]: 0 for odd order, (order-1)!! (lambda^2 N(s))^{order/2} else
double moment(const GaussianField& f, const TestFunction& s, int order);

// E[exp(i a . X)] = exp(-a^T C a / 2) over the given generators
double characteristic_function(const GaussianField& f,
                               const std::vector<TestFunction>& gens,
                               const Eigen::VectorXd& a);

// standard multivariate normal density at x; requires C positive definite
double joint_density(const GaussianField& f,
                     const std::vector<TestFunction>& gens,
                     const Eigen::VectorXd& x);

// Gram-Schmidt in the covariance metric; directions whose residual norm
// falls below drop_tol are removed.  Spans only.
std::vector<TestFunction> gamma_orthonormalize(
    const GaussianField& f, const std::vector<TestFunction>& gens,
    double drop_tol = 1e-10);

// m joint draws (rows) over the generators.  Row r is generated from the
// counter substream (seed, r), so rows do not depend on m or on evaluation
// order.  Cholesky with jitter escalation capped at 1e-10 * trace(C).
Eigen::MatrixXd sample(const GaussianField& f,
                       const std::vector<TestFunction>& gens, int m,
                       std::uint64_t seed);

// m draws of the scalar X_s (substream layout as above)
Eigen::VectorXd sample_scalar(const GaussianField& f, const TestFunction& s,
                              int m, std::uint64_t seed);

}  // namespace wns
