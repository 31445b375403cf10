#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wns/spectral_measure.hpp"
#include "wns/test_function.hpp"

namespace wns {

// Conditionally negative definite quadratic functionals N on test functions:
//
//   l2:       N(s) = \int |s(u)|^2 dmu(u)
//   fourier:  N(s) = \int |\hat{s}(u)|^2 dmu(u)   (mu symmetric)
//   mixture:  u * l2 + (1 - u) * fourier  (same mu on both sides)
//   custom:   caller-supplied functional, gated at use sites by a
//             parallelogram-law check when a bilinear form is required
//
// The quadratic variants cache the Gram of the Hermite basis under the
// relevant form, so every evaluation is a vector-matrix-vector product.
class CndModel {
 public:
  enum class Kind { l2, fourier, mixture, custom };

  static CndModel l2(SpectralMeasure mu, int basis_size);
  static CndModel fourier(SpectralMeasure mu, int basis_size);
  static CndModel mixture(SpectralMeasure mu, double u, int basis_size);
  static CndModel custom(std::string name,
                         std::function<double(const TestFunction&)> N);

  Kind kind() const { return kind_; }
  bool is_quadratic() const { return kind_ != Kind::custom; }
  int basis_size() const { return static_cast<int>(form_.rows()); }
  const SpectralMeasure& measure() const;
  double mixture_weight() const { return u_; }
  const std::string& name() const { return name_; }

  // N(s) >= 0; sesquilinear in the coefficients of a complex span
  double evaluate(const TestFunction& s) const;

  // Gram of the form over xi_1..xi_D (quadratic models only)
  const Eigen::MatrixXd& quadratic_form() const;

  // B(s1, s2) with N(s) = B(s, s): real inputs only.  Quadratic models use
  // the cached Gram; custom models that pass the parallelogram gate fall
  // back to polarization.
  double bilinear(const TestFunction& s1, const TestFunction& s2) const;

  // bilinear continuation c1^T G c2 (no conjugation) for complex spans
  std::complex<double> bilinear_c(const TestFunction& s1,
                                  const TestFunction& s2) const;

  // sesquilinear c1^H G c2, the inner product that norms complex spans
  std::complex<double> sesquilinear(const TestFunction& s1,
                                    const TestFunction& s2) const;

  // closed-form B on indicator pairs (quadratic models)
  double indicator_bilinear(double t1, double t2) const;

  // phi_N(s1, s2) = (N(s1) + N(s2) - N(s1 - s2)) / 2, through the
  // symmetrized formula (works for custom models too; spans only)
  double phi_kernel(const TestFunction& s1, const TestFunction& s2) const;

  // Q_lambda(s) = exp(-lambda^2 N(s) / 2)
  double q_kernel(double lambda, const TestFunction& s) const;

 private:
  CndModel() = default;
  Kind kind_ = Kind::l2;
  SpectralMeasure mu_ = SpectralMeasure::lebesgue();
  double u_ = 1.0;
  Eigen::MatrixXd form_;
  std::function<double(const TestFunction&)> hook_;
  std::string name_;
};

// max parallelogram defect |N(s+t) + N(s-t) - 2N(s) - 2N(t)| over random
// real span pairs, relative to the value scale
double parallelogram_defect(const CndModel& model, int dim, int trials,
                            std::uint64_t seed);

struct CndCheckResult {
  bool pass;
  double worst;  // largest value of the constrained quadratic form (should be <= ~0)
  nlohmann::json witness;
};

// Schoenberg-side check: random complex coefficients with sum zero must give
// sum_{j,k} c_j conj(c_k) N(s_j - s_k) <= tol
CndCheckResult check_cnd(const CndModel& model,
                         const std::vector<TestFunction>& generators,
                         int trials, std::uint64_t seed);

struct KernelGram {
  Eigen::MatrixXd G;
  std::string kind;  // "phi" or "q"
  double lambda = 1.0;
  double min_eig = 0.0;
  double spectral_radius = 0.0;

  bool psd(double tol_factor = 1e-9) const {
    return min_eig >= -tol_factor * std::max(spectral_radius, 1e-300);
  }
};

KernelGram build_phi_gram(const CndModel& model,
                          const std::vector<TestFunction>& generators);
KernelGram build_q_gram(const CndModel& model, double lambda,
                        const std::vector<TestFunction>& generators);

nlohmann::json to_json(const KernelGram& g);
std::string to_csv(const KernelGram& g);

}  // namespace wns
