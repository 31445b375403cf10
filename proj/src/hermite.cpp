#include "wns/hermite.hpp"

#include <cmath>
#include <numbers>

namespace wns {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
}

// Normalized recurrence for psi_k = the k-th (0-based) orthonormal Hermite
// function: psi_k(x) = x sqrt(2/k) psi_{k-1}(x) - sqrt((k-1)/k) psi_{k-2}(x),
// psi_0 = pi^{-1/4} e^{-x^2/2}.  xi_n = psi_{n-1}.
double hermite_function(int n, double x) {
  if (n < 1) throw std::invalid_argument("hermite_function: index is 1-based");
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp(-0.5 * x * x);
  for (int k = 1; k < n; ++k) {
    const double next =
        x * std::sqrt(2.0 / k) * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::VectorXd hermite_function_values(int nmax, double x) {
  if (nmax < 1) throw std::invalid_argument("hermite_function_values: nmax >= 1");
  Eigen::VectorXd out(nmax);
  double prev = 0.0;
  double cur = kPiQuarterInv * std::exp(-0.5 * x * x);
  out[0] = cur;
  for (int k = 1; k < nmax; ++k) {
    const double next =
        x * std::sqrt(2.0 / k) * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
    out[k] = cur;
  }
  return out;
}

Eigen::MatrixXd hermite_function_table(int nmax, const Eigen::VectorXd& x) {
  Eigen::MatrixXd out(x.size(), nmax);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out.row(i) = hermite_function_values(nmax, x[i]).transpose();
  return out;
}

}  // namespace wns
