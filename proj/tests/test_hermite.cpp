#include <doctest.h>

#include <cmath>
#include <vector>

#include "wns/hermite.hpp"
#include "wns/quadrature.hpp"

using namespace wns;

namespace {

// independent oracle: h_n as explicit coefficient vectors from
// h_{n+1} = x h_n - n h_{n-1}, evaluated by Horner
std::vector<std::vector<double>> hermite_coeff_table(int nmax) {
  std::vector<std::vector<double>> h(nmax + 1);
  h[0] = {1.0};
  if (nmax >= 1) h[1] = {0.0, 1.0};
  for (int n = 1; n < nmax; ++n) {
    std::vector<double> next(n + 2, 0.0);
    for (std::size_t k = 0; k < h[n].size(); ++k) next[k + 1] += h[n][k];
    for (std::size_t k = 0; k < h[n - 1].size(); ++k)
      next[k] -= static_cast<double>(n) * h[n - 1][k];
    h[n + 1] = std::move(next);
  }
  return h;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TEST_CASE("hermite matches the explicit polynomial recurrence") {
  const auto table = hermite_coeff_table(12);
  const double xs[] = {-2.5, -1.0, 0.0, 0.3, 1.7};
  for (int n = 0; n <= 12; ++n)
    for (double x : xs) {
      const double want = horner(table[n], x);
      CHECK(hermite(n, x) ==
            doctest::Approx(want).epsilon(1e-13).scale(std::abs(want) + 1.0));
    }
}

TEST_CASE("hermite pinned values") {
  CHECK(hermite(0, 5.0) == 1.0);
  CHECK(hermite(1, -3.0) == -3.0);
  CHECK(hermite(2, 2.0) == 3.0);   // x^2 - 1
  CHECK(hermite(3, 1.0) == -2.0);  // x^3 - 3x
  CHECK(hermite(4, 0.0) == 3.0);   // x^4 - 6x^2 + 3
}

TEST_CASE("hermite rejects negative order") {
  CHECK_THROWS_AS(hermite(-1, 0.0), std::invalid_argument);
}

TEST_CASE("hermite orthogonality under the standard Gaussian") {
  const QuadratureRule rule = gauss_hermite_prob(40);
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) {
      const double got =
          rule.integrate([&](double x) { return hermite(n, x) * hermite(m, x); });
      const double want = n == m ? factorial(n) : 0.0;
      CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(factorial(n)));
    }
}

TEST_CASE("hermite_function pinned values and symmetry") {
  // xi_1(0) = pi^{-1/4}
  CHECK(hermite_function(1, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(hermite_function(2, 0.0) == 0.0);  // odd function
  // xi_n has parity (-1)^{n-1}
  for (int n = 1; n <= 9; ++n) {
    const double s = n % 2 == 1 ? 1.0 : -1.0;
    CHECK(hermite_function(n, -1.3) ==
          doctest::Approx(s * hermite_function(n, 1.3)).epsilon(1e-14));
  }
}

TEST_CASE("hermite_function agrees with the probabilists' polynomial form") {
  // xi_n(x) = pi^{-1/4} ((n-1)!)^{-1/2} e^{-x^2/2} h_{n-1}(sqrt(2) x)
  const auto table = hermite_coeff_table(8);
  const double pi4 = std::pow(M_PI, -0.25);
  for (int n = 1; n <= 8; ++n)
    for (double x : {-1.7, 0.4, 2.2}) {
      const double want = pi4 / std::sqrt(factorial(n - 1)) *
                          std::exp(-0.5 * x * x) *
                          horner(table[n - 1], std::sqrt(2.0) * x);
      CHECK(hermite_function(n, x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("hermite functions are L2(R)-orthonormal") {
  const QuadratureRule rule = lebesgue_line(200);
  for (int n = 1; n <= 8; ++n)
    for (int m = n; m <= 8; ++m) {
      const double got = rule.integrate(
          [&](double x) { return hermite_function(n, x) * hermite_function(m, x); });
      CHECK(got == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("hermite_function is stable at high order") {
  // the normalized recurrence must not overflow or lose normalization;
  // xi_200 oscillates with wavenumber ~sqrt(401) inside |x| < 20, so use
  // panels fine enough to resolve it
  const QuadratureRule rule = panels(-22.0, 22.0, 160, 12);
  const double norm2 = rule.integrate([](double x) {
    const double v = hermite_function(200, x);
    return v * v;
  });
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::isfinite(hermite_function(200, 25.0)));
}

TEST_CASE("hermite_function_values and _table agree with the scalar version") {
  const Eigen::VectorXd v = hermite_function_values(10, 0.8);
  REQUIRE(v.size() == 10);
  for (int n = 1; n <= 10; ++n)
    CHECK(v[n - 1] == doctest::Approx(hermite_function(n, 0.8)).epsilon(1e-15));

  Eigen::VectorXd xs(3);
  xs << -0.5, 0.0, 1.5;
  const Eigen::MatrixXd t = hermite_function_table(6, xs);
  REQUIRE(t.rows() == 3);
  REQUIRE(t.cols() == 6);
  for (int i = 0; i < 3; ++i)
    for (int n = 1; n <= 6; ++n)
      CHECK(t(i, n - 1) == doctest::Approx(hermite_function(n, xs[i])).epsilon(1e-15));
}
