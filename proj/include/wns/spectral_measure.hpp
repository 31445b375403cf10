#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "wns/quadrature.hpp"
#include "wns/test_function.hpp"

namespace wns {

// A tempered positive measure mu on R used as the spectral data of the
// kernels: mu must satisfy \int dmu / (1 + u^2) < infinity.
//
// Variants: Lebesgue du, the power law |u|^{1-2H} du (H in (0,1); H = 1/2
// is Lebesgue again), finitely many atoms, or a caller-supplied density
// with its own quadrature rule.
class SpectralMeasure {
 public:
  enum class Kind { lebesgue, power_law, atoms, density };

  static SpectralMeasure lebesgue();
  static SpectralMeasure power_law(double H);
  static SpectralMeasure atoms(Eigen::VectorXd points, Eigen::VectorXd masses);
  static SpectralMeasure density(std::function<double(double)> rho,
                                 QuadratureRule rule);

  Kind kind() const { return kind_; }
  double hurst() const { return H_; }
  const Eigen::VectorXd& points() const { return pts_; }
  const Eigen::VectorXd& masses() const { return w_; }

  // invariant under u -> -u (needed by every fourier-side pairing)
  bool is_symmetric(double tol = 1e-12) const;

  // \int dmu / (1 + u^2); closed form where available
  double tempered_mass() const;

  // mu([0, t]), t >= 0 (lebesgue / power_law / atoms)
  double mass_0t(double t) const;

  // \int_{|u| > U} u^{-2} dmu, closed form (lebesgue / power_law / atoms)
  double tail_beyond(double U) const;

  // Gram of the Hermite functions: G[n,m] = \int xi_{n+1} xi_{m+1} dmu.
  // Positive semidefinite by construction (all rules have w >= 0).
  Eigen::MatrixXd hermite_gram(int D) const;

  // Rule adequate for integrating products of xi_1..xi_D against mu.
  QuadratureRule schwartz_rule(int D) const;

 private:
  SpectralMeasure() = default;
  Kind kind_ = Kind::lebesgue;
  double H_ = 0.5;
  Eigen::VectorXd pts_, w_;
  std::function<double(double)> rho_;
  QuadratureRule rho_rule_;
};

// \int |s(u)|^2 dmu(u) for a hermite span (exact sums for atoms).
double integrate_squared(const SpectralMeasure& mu, const TestFunction& s);

struct PairingValue {
  std::complex<double> value;
  double error_estimate;
};

// Covariance-level pairing of two indicators 1_{[0,t1]}, 1_{[0,t2]} on the
// fourier side:
//   \int (e^{i t1 u} - 1)(e^{-i t2 u} - 1) u^{-2} dmu(u).
// mu must be symmetric (otherwise the value would be complex: rejected).
// abs_tol steers the oscillatory tail cutoff.
PairingValue indicator_pairing(const SpectralMeasure& mu, double t1, double t2,
                               double abs_tol = 1e-6);

}  // namespace wns
