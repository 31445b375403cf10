#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wns/fock.hpp"
#include "wns/gaussian.hpp"

namespace wns {

// Finite combinations sum_j c_j exp(z_j X_{s_j}) with complex c, z and real
// test functions s.  All expectations reduce to the closed-form Gaussian
// moment generating function
//   E[exp(sum_j z_j X_{s_j})] = exp(lambda^2/2 sum_{jk} z_j z_k B(s_j, s_k)),
// where B extends the model form bilinearly (no conjugation).
struct ExpCombo {
  std::vector<std::complex<double>> c;
  std::vector<std::complex<double>> z;
  std::vector<TestFunction> s;

  static ExpCombo single(std::complex<double> c, std::complex<double> z,
                         TestFunction s);
};

// refuses models without a usable bilinear form: custom functionals are
// spot-checked against the parallelogram law and rejected on failure
void require_bilinear(const CndModel& model);

std::complex<double> expectation(const GaussianField& f, const ExpCombo& g);
// <f1, f2> = E[conj(f1) f2]
std::complex<double> inner(const GaussianField& f, const ExpCombo& f1,
                           const ExpCombo& f2);
double norm_squared(const GaussianField& f, const ExpCombo& g);
Eigen::MatrixXcd gram(const GaussianField& f,
                      const std::vector<ExpCombo>& elems);

// exp(X_s / sqrt(2)): norm^2 = exp(lambda^2 N(s)), but cross inner products
// do not reproduce the exponential-vector Gram (see wick_exp)
ExpCombo heat_exp(const TestFunction& s);

// Wick-corrected exp(X_s - Var(X_s)/2): the Gram reproduces
// exp(Gamma_lambda(s1, s2)) = <eps(phi_s1), eps(phi_s2)> exactly
ExpCombo wick_exp(const GaussianField& f, const TestFunction& s);

// (T e^{z X_s})(probe) = E[e^{z X_s} e^{i X_probe}]
std::complex<double> t_transform_exp(const GaussianField& f,
                                     std::complex<double> z,
                                     const TestFunction& s,
                                     const TestFunction& probe);

// Q_lambda(probe - center) = exp(-lambda^2 N(probe - center) / 2)
double q_kernel_at(const GaussianField& f, const TestFunction& center,
                   const TestFunction& probe);

struct RanTransformValue {
  std::complex<double> via_transform;  // T applied to exp(X_s / sqrt(2))
  std::complex<double> closed_form;    // exp(-lambda^2 N_C(probe - i s/sqrt 2)/2)
};
RanTransformValue r_transform_exp(const GaussianField& f,
                                  const TestFunction& s,
                                  const TestFunction& probe);

// Frobenius distances on columns of interior degree <= K-1 between the
// recurrence-built multiplication operator M(h) and the field operators:
// dist_sum should vanish, dist_create_only equals ||a(h)|| restricted.
struct IntertwiningReport {
  double dist_sum;          // || M - (a + a*) ||
  double dist_create_only;  // || M - a* ||
  double ann_norm;          // || a ||
};
IntertwiningReport intertwining_check(Truncation t, const Eigen::VectorXd& h);

}  // namespace wns
