#include "wns/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace wns {

namespace {

// Monic three-term recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}.
// Nodes are eigenvalues of the Jacobi matrix, weights mu0 * v0^2.
QuadratureRule golub_welsch(const Eigen::VectorXd& alpha,
                            const Eigen::VectorXd& beta, double mu0) {
  const Eigen::Index n = alpha.size();
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) sub[k] = std::sqrt(beta[k + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(alpha, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: tridiagonal eigensolve failed");
  QuadratureRule r;
  r.nodes = es.eigenvalues();
  r.weights = mu0 * es.eigenvectors().row(0).array().square();
  return r;
}

void require_order(int n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": order must be >= 1");
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  require_order(n, "gauss_legendre");
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n), beta(n);
  beta[0] = 0.0;
  for (int k = 1; k < n; ++k) beta[k] = k * k / (4.0 * k * k - 1.0);
  return golub_welsch(alpha, beta, 2.0);
}

QuadratureRule gauss_hermite(int n) {
  require_order(n, "gauss_hermite");
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n), beta(n);
  beta[0] = 0.0;
  for (int k = 1; k < n; ++k) beta[k] = k / 2.0;
  return golub_welsch(alpha, beta, std::sqrt(std::numbers::pi));
}

QuadratureRule gauss_hermite_prob(int n) {
  require_order(n, "gauss_hermite_prob");
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n), beta(n);
  beta[0] = 0.0;
  for (int k = 1; k < n; ++k) beta[k] = k;
  return golub_welsch(alpha, beta, 1.0);
}

QuadratureRule lebesgue_line(int n) {
  if (n > 320)
    throw std::invalid_argument("lebesgue_line: order > 320 overflows the stripped weights");
  QuadratureRule r = gauss_hermite(n);
  r.weights = r.weights.array() * (r.nodes.array().square()).exp();
  return r;
}

QuadratureRule mapped(const QuadratureRule& unit, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("mapped: need a < b");
  QuadratureRule r;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  r.nodes = (unit.nodes.array() * half + mid).matrix();
  r.weights = unit.weights * half;
  return r;
}

QuadratureRule concat(const QuadratureRule& a, const QuadratureRule& b) {
  QuadratureRule r;
  r.nodes.resize(a.size() + b.size());
  r.weights.resize(a.size() + b.size());
  r.nodes << a.nodes, b.nodes;
  r.weights << a.weights, b.weights;
  return r;
}

QuadratureRule panels(double a, double b, int npanels, int per_panel) {
  if (npanels < 1) throw std::invalid_argument("panels: need npanels >= 1");
  const QuadratureRule unit = gauss_legendre(per_panel);
  QuadratureRule r;
  r.nodes.resize(Eigen::Index(npanels) * per_panel);
  r.weights.resize(Eigen::Index(npanels) * per_panel);
  const double w = (b - a) / npanels;
  for (int p = 0; p < npanels; ++p) {
    QuadratureRule seg = mapped(unit, a + p * w, a + (p + 1) * w);
    r.nodes.segment(Eigen::Index(p) * per_panel, per_panel) = seg.nodes;
    r.weights.segment(Eigen::Index(p) * per_panel, per_panel) = seg.weights;
  }
  return r;
}

QuadratureRule log_panels(double a, double b, int per_decade, int per_panel) {
  if (!(a > 0.0 && a < b)) throw std::invalid_argument("log_panels: need 0 < a < b");
  if (per_decade < 1) throw std::invalid_argument("log_panels: need per_decade >= 1");
  const QuadratureRule unit = gauss_legendre(per_panel);
  const double step = std::pow(10.0, 1.0 / per_decade);
  QuadratureRule r;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(lo * step, b);
    r = r.size() ? concat(r, mapped(unit, lo, hi)) : mapped(unit, lo, hi);
    lo = hi;
  }
  return r;
}

}  // namespace wns
