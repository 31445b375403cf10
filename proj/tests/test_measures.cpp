#include <doctest.h>

#include <cmath>
#include <complex>

#include "wns/hermite.hpp"
#include "wns/spectral_measure.hpp"
#include "wns/test_function.hpp"

using namespace wns;

TEST_CASE("tempered_mass closed forms") {
  CHECK(SpectralMeasure::lebesgue().tempered_mass() ==
        doctest::Approx(M_PI).epsilon(1e-14));
  // int |u|^{1-2H} / (1+u^2) du = pi / sin(pi H)
  for (double H : {0.25, 0.4, 0.75}) {
    CHECK(SpectralMeasure::power_law(H).tempered_mass() ==
          doctest::Approx(M_PI / std::sin(M_PI * H)).epsilon(1e-12));
  }
  Eigen::VectorXd p(2), w(2);
  p << -1.0, 2.0;
  w << 0.5, 0.25;
  CHECK(SpectralMeasure::atoms(p, w).tempered_mass() ==
        doctest::Approx(0.5 / 2.0 + 0.25 / 5.0).epsilon(1e-15));
}

TEST_CASE("mass_0t and tail_beyond closed forms") {
  const auto leb = SpectralMeasure::lebesgue();
  CHECK(leb.mass_0t(1.7) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(leb.tail_beyond(4.0) == doctest::Approx(0.5).epsilon(1e-14));

  const double H = 0.25;
  const auto pl = SpectralMeasure::power_law(H);
  CHECK(pl.mass_0t(2.0) ==
        doctest::Approx(std::pow(2.0, 2.0 - 2.0 * H) / (2.0 - 2.0 * H)).epsilon(1e-14));
  CHECK(pl.tail_beyond(3.0) ==
        doctest::Approx(std::pow(3.0, -2.0 * H) / H).epsilon(1e-14));

  Eigen::VectorXd p(3), w(3);
  p << -2.0, 0.5, 3.0;
  w << 1.0, 2.0, 4.0;
  const auto at = SpectralMeasure::atoms(p, w);
  CHECK(at.mass_0t(1.0) == 2.0);
  CHECK(at.tail_beyond(1.0) == doctest::Approx(1.0 / 4.0 + 4.0 / 9.0).epsilon(1e-15));

  CHECK_THROWS_AS(leb.mass_0t(-0.1), std::invalid_argument);
}

TEST_CASE("is_symmetric") {
  CHECK(SpectralMeasure::lebesgue().is_symmetric());
  CHECK(SpectralMeasure::power_law(0.3).is_symmetric());
  Eigen::VectorXd p(2), w(2);
  p << -1.0, 1.0;
  w << 0.5, 0.5;
  CHECK(SpectralMeasure::atoms(p, w).is_symmetric());
  p << -1.0, 2.0;
  CHECK_FALSE(SpectralMeasure::atoms(p, w).is_symmetric());
  p << -1.0, 1.0;
  w << 0.5, 0.4;
  CHECK_FALSE(SpectralMeasure::atoms(p, w).is_symmetric());
}

TEST_CASE("hermite_gram of Lebesgue is the identity") {
  const Eigen::MatrixXd g = SpectralMeasure::lebesgue().hermite_gram(6);
  CHECK((g - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("hermite_gram of a power law matches Gamma-function entries") {
  // With sigma = 1 - 2H:
  //   G[0,0] = Gamma((sigma+1)/2) / sqrt(pi)
  //   G[1,1] = 2 Gamma((sigma+3)/2) / sqrt(pi)
  //   G[0,2] = (2 Gamma((sigma+3)/2) - Gamma((sigma+1)/2)) / sqrt(2 pi)
  for (double H : {0.25, 0.75}) {
    const double sigma = 1.0 - 2.0 * H;
    const Eigen::MatrixXd g = SpectralMeasure::power_law(H).hermite_gram(4);
    const double g00 = std::tgamma(0.5 * (sigma + 1.0)) / std::sqrt(M_PI);
    const double g11 = 2.0 * std::tgamma(0.5 * (sigma + 3.0)) / std::sqrt(M_PI);
    const double g02 = (2.0 * std::tgamma(0.5 * (sigma + 3.0)) -
                        std::tgamma(0.5 * (sigma + 1.0))) /
                       std::sqrt(2.0 * M_PI);
    CHECK(g(0, 0) == doctest::Approx(g00).epsilon(1e-10));
    CHECK(g(1, 1) == doctest::Approx(g11).epsilon(1e-10));
    CHECK(g(0, 2) == doctest::Approx(g02).epsilon(1e-10).scale(1.0));
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    // odd-even entries vanish by parity
    CHECK(std::abs(g(0, 1)) <= 1e-12);
    CHECK(std::abs(g(1, 2)) <= 1e-12);
    const Eigen::VectorXd eig = g.selfadjointView<Eigen::Lower>().eigenvalues();
    CHECK(eig.minCoeff() >= -1e-12 * g.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("hermite_gram of atoms is the exact weighted sum") {
  Eigen::VectorXd p(3), w(3);
  p << -1.5, 0.0, 1.5;
  w << 0.3, 0.4, 0.3;
  const Eigen::MatrixXd g = SpectralMeasure::atoms(p, w).hermite_gram(5);
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m) {
      double want = 0.0;
      for (int a = 0; a < 3; ++a)
        want += w[a] * hermite_function(n + 1, p[a]) * hermite_function(m + 1, p[a]);
      CHECK(g(n, m) == doctest::Approx(want).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("hermite_gram of a density handle goes through its rule") {
  // rho = (2 pi)^{-1/2} e^{-u^2/2}: gram entries are Gaussian moments of
  // products of hermite functions; spot-check against a direct quadrature
  const auto rule = lebesgue_line(200);
  const auto mu = SpectralMeasure::density(
      [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); }, rule);
  const Eigen::MatrixXd g = mu.hermite_gram(3);
  const double want = rule.integrate([](double u) {
    const double x1 = hermite_function(1, u);
    return x1 * x1 * std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
  });
  CHECK(g(0, 0) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("integrate_squared") {
  const auto leb = SpectralMeasure::lebesgue();
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
  e1[0] = 1.0;
  CHECK(integrate_squared(leb, TestFunction::hermite_span(e1)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // complex span against atoms: exact |s(p)|^2 sums
  Eigen::VectorXd p(2), w(2);
  p << -1.0, 1.0;
  w << 0.5, 0.5;
  const auto at = SpectralMeasure::atoms(p, w);
  Eigen::VectorXcd c(2);
  c << std::complex<double>(1.0, 2.0), std::complex<double>(0.0, -1.0);
  const auto s = TestFunction::hermite_span(c);
  double want = 0.0;
  for (int a = 0; a < 2; ++a) want += w[a] * std::norm(s(p[a]));
  CHECK(integrate_squared(at, s) == doctest::Approx(want).epsilon(1e-13));

  // indicators integrate to mu([0, t])
  CHECK(integrate_squared(leb, TestFunction::indicator(2.5)) ==
        doctest::Approx(2.5).epsilon(1e-15));
  const auto dens = SpectralMeasure::density([](double) { return 1.0; },
                                             mapped(gauss_legendre(8), -1.0, 1.0));
  CHECK_THROWS_AS(integrate_squared(dens, TestFunction::indicator(1.0)),
                  std::invalid_argument);
}

TEST_CASE("indicator_pairing against Lebesgue is 2 pi min(t1, t2)") {
  const auto leb = SpectralMeasure::lebesgue();
  for (double t1 : {0.4, 1.0, 2.0})
    for (double t2 : {0.4, 1.2, 1.6}) {
      const PairingValue v = indicator_pairing(leb, t1, t2);
      const double want = 2.0 * M_PI * std::min(t1, t2);
      CHECK(std::abs(v.value.real() - want) <= 1e-5 * want);
      CHECK(std::abs(v.value.imag()) <= 1e-9);
      CHECK(v.error_estimate <= 1e-5);
    }
}

TEST_CASE("indicator_pairing against a power law has the closed fBm form") {
  // I(a) = int (1 - cos(a u)) |u|^{1-2H} u^{-2} du = 2 a^{2H} (-Gamma(-2H) cos(pi H)),
  // so the pairing is 2 (-Gamma(-2H) cos(pi H)) (t1^{2H} + t2^{2H} - |t1-t2|^{2H}).
  for (double H : {0.25, 0.75}) {
    const auto mu = SpectralMeasure::power_law(H);
    const double c = 2.0 * (-std::tgamma(-2.0 * H)) * std::cos(M_PI * H);
    REQUIRE(c > 0.0);
    for (double t1 : {0.5, 1.0})
      for (double t2 : {0.5, 1.5}) {
        const PairingValue v = indicator_pairing(mu, t1, t2);
        const double want = c * (std::pow(t1, 2.0 * H) + std::pow(t2, 2.0 * H) -
                                 std::pow(std::abs(t1 - t2), 2.0 * H));
        CHECK(v.value.real() == doctest::Approx(want).epsilon(1e-5));
        CHECK(std::abs(v.value.imag()) <= 1e-9);
      }
  }
}

TEST_CASE("indicator_pairing against atoms is the exact sum") {
  Eigen::VectorXd p(3), w(3);
  p << -2.0, 0.0, 2.0;
  w << 0.3, 0.4, 0.3;
  const auto mu = SpectralMeasure::atoms(p, w);
  const double t1 = 0.7, t2 = 1.9;
  std::complex<double> want = 0.0;
  const std::complex<double> i1(0.0, 1.0);
  for (int a = 0; a < 3; ++a) {
    if (p[a] == 0.0) {
      want += w[a] * t1 * t2;  // u -> 0 limit of the integrand
    } else {
      want += w[a] * (std::exp(i1 * t1 * p[a]) - 1.0) *
              (std::exp(-i1 * t2 * p[a]) - 1.0) / (p[a] * p[a]);
    }
  }
  const PairingValue v = indicator_pairing(mu, t1, t2);
  CHECK(std::abs(v.value - want) <= 1e-12);
  CHECK(std::abs(v.value.imag()) <= 1e-12);
}

TEST_CASE("indicator_pairing validates its inputs") {
  Eigen::VectorXd p(2), w(2);
  p << -1.0, 2.0;
  w << 0.5, 0.5;
  CHECK_THROWS_AS(indicator_pairing(SpectralMeasure::atoms(p, w), 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(indicator_pairing(SpectralMeasure::lebesgue(), 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("measure factories validate their inputs") {
  CHECK_THROWS_AS(SpectralMeasure::power_law(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralMeasure::power_law(1.0), std::invalid_argument);
  Eigen::VectorXd p(1), w(2);
  p << 0.0;
  w << 0.5, 0.5;
  CHECK_THROWS_AS(SpectralMeasure::atoms(p, w), std::invalid_argument);
  Eigen::VectorXd w1(1);
  w1 << -0.5;
  CHECK_THROWS_AS(SpectralMeasure::atoms(p, w1), std::invalid_argument);
}
