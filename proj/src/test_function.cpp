#include "wns/test_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wns/hermite.hpp"

namespace wns {

namespace {
void require_finite(const Eigen::VectorXcd& c) {
  if (!c.allFinite())
    throw std::invalid_argument("test function: non-finite coefficient");
}
}  // namespace

TestFunction TestFunction::hermite_span(Eigen::VectorXcd coeffs) {
  if (coeffs.size() == 0)
    throw std::invalid_argument("test function: empty coefficient vector");
  require_finite(coeffs);
  TestFunction s;
  s.kind_ = Kind::hermite_span;
  s.c_ = std::move(coeffs);
  return s;
}

TestFunction TestFunction::hermite_span(const Eigen::VectorXd& coeffs) {
  return hermite_span(Eigen::VectorXcd(coeffs.cast<std::complex<double>>()));
}

TestFunction TestFunction::indicator(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::invalid_argument("test function: indicator needs t > 0");
  TestFunction s;
  s.kind_ = Kind::indicator;
  s.t_ = t;
  return s;
}

const Eigen::VectorXcd& TestFunction::coeffs() const {
  if (kind_ != Kind::hermite_span)
    throw std::logic_error("test function: coeffs() on an indicator");
  return c_;
}

int TestFunction::dim() const { return static_cast<int>(coeffs().size()); }

bool TestFunction::is_real() const {
  if (kind_ == Kind::indicator) return true;
  return c_.imag().isZero(0.0);
}

double TestFunction::upper() const {
  if (kind_ != Kind::indicator)
    throw std::logic_error("test function: upper() on a hermite span");
  return t_;
}

std::complex<double> TestFunction::operator()(double x) const {
  if (kind_ == Kind::indicator)
    return (x >= 0.0 && x <= t_) ? 1.0 : 0.0;
  const Eigen::VectorXd xi = hermite_function_values(dim(), x);
  return c_.transpose() * xi.cast<std::complex<double>>();
}

TestFunction combine(std::complex<double> a, const TestFunction& s1,
                     std::complex<double> b, const TestFunction& s2) {
  if (!s1.is_span() || !s2.is_span())
    throw std::invalid_argument("combine: only hermite spans form linear combinations");
  if (s1.dim() != s2.dim())
    throw std::invalid_argument("combine: mixed basis sizes");
  return TestFunction::hermite_span(
      Eigen::VectorXcd(a * s1.coeffs() + b * s2.coeffs()));
}

std::vector<TestFunction> hermite_basis_spans(int count, int dim) {
  if (dim < 0) dim = count;
  if (count < 1 || dim < count)
    throw std::invalid_argument("hermite_basis_spans: need 1 <= count <= dim");
  std::vector<TestFunction> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
    c[j] = 1.0;
    out.push_back(TestFunction::hermite_span(c));
  }
  return out;
}

std::complex<double> l2_inner(const TestFunction& s1, const TestFunction& s2) {
  if (s1.is_span() && s2.is_span()) {
    if (s1.dim() != s2.dim())
      throw std::invalid_argument("l2_inner: mixed basis sizes");
    return s1.coeffs().dot(s2.coeffs());  // Eigen dot conjugates the first arg
  }
  if (!s1.is_span() && !s2.is_span())
    return std::min(s1.upper(), s2.upper());
  throw std::invalid_argument("l2_inner: mixed representations");
}

TestFunction fourier_transform(const TestFunction& s) {
  if (!s.is_span())
    throw std::invalid_argument("fourier_transform: spans only");
  const double root = std::sqrt(2.0 * std::numbers::pi);
  Eigen::VectorXcd out = s.coeffs();
  std::complex<double> phase(1.0, 0.0);           // (-i)^{n-1}, n = 1, 2, ...
  const std::complex<double> mi(0.0, -1.0);
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    out[n] *= root * phase;
    phase *= mi;
  }
  return TestFunction::hermite_span(std::move(out));
}

nlohmann::json to_json(const TestFunction& s) {
  nlohmann::json j;
  if (s.is_span()) {
    j["kind"] = "hermite";
    auto arr = nlohmann::json::array();
    for (Eigen::Index n = 0; n < s.coeffs().size(); ++n) {
      const auto z = s.coeffs()[n];
      if (z.imag() == 0.0)
        arr.push_back(z.real());
      else
        arr.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
    j["coeffs"] = std::move(arr);
  } else {
    j["kind"] = "indicator";
    j["t"] = s.upper();
  }
  return j;
}

TestFunction test_function_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "indicator") return TestFunction::indicator(j.at("t").get<double>());
  if (kind != "hermite")
    throw std::invalid_argument("test function json: unknown kind '" + kind + "'");
  const auto& arr = j.at("coeffs");
  Eigen::VectorXcd c(arr.size());
  for (std::size_t n = 0; n < arr.size(); ++n) {
    if (arr[n].is_array())
      c[n] = {arr[n].at(0).get<double>(), arr[n].at(1).get<double>()};
    else
      c[n] = arr[n].get<double>();
  }
  return TestFunction::hermite_span(std::move(c));
}

}  // namespace wns
