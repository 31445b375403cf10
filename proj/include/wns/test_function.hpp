#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include <json.hpp>

namespace wns {

// A test function is either a finite span of the orthonormal Hermite
// functions xi_1..xi_D (coefficients may be complex), or the indicator
// 1_{[0,t]} with t > 0.  Spans support linear algebra; indicators only
// participate in the closed-form covariance pairings.
class TestFunction {
 public:
  enum class Kind { hermite_span, indicator };

  static TestFunction hermite_span(Eigen::VectorXcd coeffs);
  static TestFunction hermite_span(const Eigen::VectorXd& coeffs);
  static TestFunction indicator(double t);

  Kind kind() const { return kind_; }
  bool is_span() const { return kind_ == Kind::hermite_span; }

  // hermite_span only
  const Eigen::VectorXcd& coeffs() const;
  int dim() const;
  bool is_real() const;

  // indicator only
  double upper() const;

  std::complex<double> operator()(double x) const;

 private:
  TestFunction() = default;
  Kind kind_ = Kind::hermite_span;
  Eigen::VectorXcd c_;
  double t_ = 0.0;
};

// a*s1 + b*s2; both must be hermite spans over the same basis size.
TestFunction combine(std::complex<double> a, const TestFunction& s1,
                     std::complex<double> b, const TestFunction& s2);

// The unit spans xi_1..xi_count, padded with zeros to a basis of size dim
// (dim = -1 means dim = count).
std::vector<TestFunction> hermite_basis_spans(int count, int dim = -1);

// \int conj(s1) s2 dx.  Exact coefficient sum for spans (the xi are
// L^2(R)-orthonormal).
std::complex<double> l2_inner(const TestFunction& s1, const TestFunction& s2);

// Fourier transform under  \hat{s}(t) = \int e^{-i t u} s(u) du, through the
// eigenrelation  \hat{xi}_n = sqrt(2 pi) (-i)^{n-1} xi_n.  Spans only.
// Note the convention is unnormalized: ||\hat{s}||^2 = 2 pi ||s||^2.
TestFunction fourier_transform(const TestFunction& s);

nlohmann::json to_json(const TestFunction& s);
TestFunction test_function_from_json(const nlohmann::json& j);

}  // namespace wns
