#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace wns {

// Nodes and weights used as sum_i w_i f(x_i).  Which measure the rule
// integrates against (an interval, the whole line, a weighted measure...)
// is determined by the builder that produced it.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    auto acc = decltype(f(0.0)){};
    for (Eigen::Index i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

struct QuadratureError : std::runtime_error {
  double achieved_estimate;
  QuadratureError(const std::string& msg, double est)
      : std::runtime_error(msg + " (achieved error estimate " +
                           std::to_string(est) + ")"),
        achieved_estimate(est) {}
};

// Gauss rules, via Golub-Welsch on the Jacobi matrix.
QuadratureRule gauss_legendre(int n);      // weight 1 on [-1, 1]
QuadratureRule gauss_hermite(int n);       // weight e^{-x^2} on R
QuadratureRule gauss_hermite_prob(int n);  // weight (2*pi)^{-1/2} e^{-x^2/2} on R

// Plain dx on the whole line: Gauss-Hermite with the weight stripped back
// out.  Exact for (polynomial of degree <= 2n-1) * e^{-x^2}; n <= 320.
QuadratureRule lebesgue_line(int n);

QuadratureRule mapped(const QuadratureRule& unit, double a, double b);
QuadratureRule concat(const QuadratureRule& a, const QuadratureRule& b);
// [a, b] split into npanels equal panels, Gauss-Legendre on each.
QuadratureRule panels(double a, double b, int npanels, int per_panel);
// 0 < a < b, panels at a * 10^{k / per_decade}: resolves integrable
// endpoint singularities at the left end.
QuadratureRule log_panels(double a, double b, int per_decade, int per_panel);

}  // namespace wns
