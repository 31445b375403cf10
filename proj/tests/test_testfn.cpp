#include <doctest.h>

#include <cmath>
#include <complex>

#include "wns/hermite.hpp"
#include "wns/quadrature.hpp"
#include "wns/test_function.hpp"

using namespace wns;
using cd = std::complex<double>;

TEST_CASE("span construction and evaluation") {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
  c[0] = 1.0;
  const TestFunction s = TestFunction::hermite_span(c);
  CHECK(s.is_span());
  CHECK(s.dim() == 4);
  CHECK(s.is_real());
  CHECK(s(0.3).real() == doctest::Approx(hermite_function(1, 0.3)).epsilon(1e-15));
  CHECK(s(0.3).imag() == 0.0);

  Eigen::VectorXcd cc(2);
  cc << cd(0.0, 1.0), cd(2.0, 0.0);
  const TestFunction z = TestFunction::hermite_span(cc);
  CHECK_FALSE(z.is_real());
  const cd want = cd(0.0, 1.0) * hermite_function(1, -0.7) +
                  2.0 * hermite_function(2, -0.7);
  CHECK(std::abs(z(-0.7) - want) <= 1e-15);
}

TEST_CASE("indicator construction and evaluation") {
  const TestFunction f = TestFunction::indicator(1.5);
  CHECK_FALSE(f.is_span());
  CHECK(f.upper() == 1.5);
  CHECK(f(0.7).real() == 1.0);
  CHECK(f(1.5).real() == 1.0);
  CHECK(f(1.6).real() == 0.0);
  CHECK(f(-0.1).real() == 0.0);
  CHECK_THROWS_AS(TestFunction::indicator(0.0), std::invalid_argument);
  CHECK_THROWS_AS(f.coeffs(), std::logic_error);
  CHECK_THROWS_AS(TestFunction::hermite_span(Eigen::VectorXcd()),
                  std::invalid_argument);
}

TEST_CASE("combine is exact coefficient algebra") {
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const auto s1 = TestFunction::hermite_span(a);
  const auto s2 = TestFunction::hermite_span(b);
  const TestFunction s = combine(cd(2.0, 1.0), s1, cd(0.0, -3.0), s2);
  CHECK(s.coeffs()[0] == cd(2.0, 1.0));
  CHECK(s.coeffs()[1] == cd(0.0, -3.0));

  Eigen::VectorXd c3(3);
  c3 << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(combine(1.0, s1, 1.0, TestFunction::hermite_span(c3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(combine(1.0, s1, 1.0, TestFunction::indicator(1.0)),
                  std::invalid_argument);
}

TEST_CASE("hermite_basis_spans") {
  const auto gens = hermite_basis_spans(3, 5);
  REQUIRE(gens.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(gens[i].dim() == 5);
    for (int j = 0; j < 5; ++j)
      CHECK(gens[i].coeffs()[j] == (i == j ? cd(1.0) : cd(0.0)));
  }
  CHECK(hermite_basis_spans(4).front().dim() == 4);
  CHECK_THROWS_AS(hermite_basis_spans(0), std::invalid_argument);
  CHECK_THROWS_AS(hermite_basis_spans(6, 4), std::invalid_argument);
}

TEST_CASE("l2_inner conjugates the first argument") {
  Eigen::VectorXcd a(2), b(2);
  a << cd(0.0, 1.0), cd(0.0, 0.0);
  b << cd(1.0, 0.0), cd(0.0, 0.0);
  const auto sa = TestFunction::hermite_span(a);
  const auto sb = TestFunction::hermite_span(b);
  CHECK(l2_inner(sa, sb) == cd(0.0, -1.0));  // conj(i) * 1
  CHECK(l2_inner(sb, sa) == cd(0.0, 1.0));
  CHECK(l2_inner(sa, sa) == cd(1.0, 0.0));

  // quadrature cross-check on a real span
  Eigen::VectorXd c(3);
  c << 0.5, -1.0, 2.0;
  const auto s = TestFunction::hermite_span(c);
  const auto rule = lebesgue_line(120);
  const double want = rule.integrate([&](double x) { return std::norm(s(x)); });
  CHECK(l2_inner(s, s).real() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("l2_inner of indicators is the overlap length") {
  const auto f1 = TestFunction::indicator(1.0);
  const auto f2 = TestFunction::indicator(2.5);
  CHECK(l2_inner(f1, f2) == cd(1.0, 0.0));
  CHECK(l2_inner(f2, f2) == cd(2.5, 0.0));
  CHECK_THROWS_AS(
      l2_inner(f1, TestFunction::hermite_span(Eigen::VectorXd(Eigen::VectorXd::Ones(1)))),
      std::invalid_argument);
}

TEST_CASE("fourier_transform applies the eigenvalue phases") {
  Eigen::VectorXd c = Eigen::VectorXd::Ones(4);
  const TestFunction shat = fourier_transform(TestFunction::hermite_span(c));
  const double r = std::sqrt(2.0 * M_PI);
  const cd mi(0.0, -1.0);  // (-i)^{n-1} down the coefficients
  CHECK(std::abs(shat.coeffs()[0] - r * cd(1.0)) <= 1e-15);
  CHECK(std::abs(shat.coeffs()[1] - r * mi) <= 1e-15);
  CHECK(std::abs(shat.coeffs()[2] - r * cd(-1.0)) <= 1e-15);
  CHECK(std::abs(shat.coeffs()[3] - r * cd(0.0, 1.0)) <= 1e-15);
  CHECK_THROWS_AS(fourier_transform(TestFunction::indicator(1.0)),
                  std::invalid_argument);
}

TEST_CASE("fourier_transform agrees with direct quadrature of e^{-itu}s(u)") {
  // independent check of both the sqrt(2 pi) factor and the (-i) phase ladder;
  // n = 40 keeps the weight-stripped rule inside its stable range
  const auto rule = lebesgue_line(40);
  for (int n = 1; n <= 4; ++n) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    c[n - 1] = 1.0;
    const auto s = TestFunction::hermite_span(c);
    const auto shat = fourier_transform(s);
    for (double t : {0.0, 0.7, -1.3}) {
      const cd want = rule.integrate([&](double u) {
        return std::exp(cd(0.0, -t * u)) * s(u);
      });
      CHECK(std::abs(shat(t) - want) <= 1e-10);
    }
  }
}

TEST_CASE("Plancherel with the 2 pi normalization") {
  Eigen::VectorXcd c(3);
  c << cd(1.0, -1.0), cd(0.5, 0.0), cd(0.0, 2.0);
  const auto s = TestFunction::hermite_span(c);
  const auto shat = fourier_transform(s);
  CHECK(l2_inner(shat, shat).real() ==
        doctest::Approx(2.0 * M_PI * l2_inner(s, s).real()).epsilon(1e-14));
  // double transform is 2 pi times the parity flip: coeffs scale by 2 pi (-1)^{n-1}
  const auto sdd = fourier_transform(shat);
  for (int n = 0; n < 3; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(sdd.coeffs()[n] - 2.0 * M_PI * sign * c[n]) <= 1e-12);
  }
}

TEST_CASE("json round trip") {
  Eigen::VectorXcd c(2);
  c << cd(1.0, -2.0), cd(3.0, 0.0);
  const auto s = TestFunction::hermite_span(c);
  const TestFunction s2 = test_function_from_json(to_json(s));
  REQUIRE(s2.is_span());
  CHECK((s2.coeffs() - s.coeffs()).norm() == 0.0);

  const auto f = TestFunction::indicator(0.75);
  const TestFunction f2 = test_function_from_json(to_json(f));
  CHECK_FALSE(f2.is_span());
  CHECK(f2.upper() == 0.75);

  CHECK_THROWS_AS(test_function_from_json(nlohmann::json{{"kind", "nope"}}),
                  std::invalid_argument);
}
