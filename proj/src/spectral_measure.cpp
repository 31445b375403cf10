#include "wns/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wns/hermite.hpp"

namespace wns {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralMeasure SpectralMeasure::lebesgue() {
  SpectralMeasure mu;
  mu.kind_ = Kind::lebesgue;
  return mu;
}

SpectralMeasure SpectralMeasure::power_law(double H) {
  if (!(H > 0.0 && H < 1.0))
    throw std::invalid_argument("power_law: H must lie in (0, 1)");
  SpectralMeasure mu;
  mu.kind_ = Kind::power_law;
  mu.H_ = H;
  return mu;
}

SpectralMeasure SpectralMeasure::atoms(Eigen::VectorXd points,
                                       Eigen::VectorXd masses) {
  if (points.size() == 0 || points.size() != masses.size())
    throw std::invalid_argument("atoms: need matching nonempty points/masses");
  if (!points.allFinite() || !masses.allFinite() || (masses.array() < 0.0).any())
    throw std::invalid_argument("atoms: masses must be finite and >= 0");
  SpectralMeasure mu;
  mu.kind_ = Kind::atoms;
  mu.pts_ = std::move(points);
  mu.w_ = std::move(masses);
  return mu;
}

SpectralMeasure SpectralMeasure::density(std::function<double(double)> rho,
                                         QuadratureRule rule) {
  if (!rho || rule.size() == 0)
    throw std::invalid_argument("density: need a density handle and a rule");
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double v = rho(rule.nodes[i]);
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("density: handle must be finite and >= 0 on the rule");
  }
  SpectralMeasure mu;
  mu.kind_ = Kind::density;
  mu.rho_ = std::move(rho);
  mu.rho_rule_ = std::move(rule);
  return mu;
}

bool SpectralMeasure::is_symmetric(double tol) const {
  switch (kind_) {
    case Kind::lebesgue:
    case Kind::power_law:
      return true;
    case Kind::atoms: {
      // every atom off the origin needs a mirror of equal mass
      for (Eigen::Index i = 0; i < pts_.size(); ++i) {
        if (pts_[i] == 0.0) continue;
        double mirrored = 0.0, self = 0.0;
        for (Eigen::Index j = 0; j < pts_.size(); ++j) {
          if (std::abs(pts_[j] + pts_[i]) <= tol) mirrored += w_[j];
          if (std::abs(pts_[j] - pts_[i]) <= tol) self += w_[j];
        }
        if (std::abs(mirrored - self) > tol * std::max(1.0, self)) return false;
      }
      return true;
    }
    case Kind::density: {
      for (double x = 0.25; x <= 6.0; x += 0.25) {
        const double a = rho_(x), b = rho_(-x);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) return false;
      }
      return true;
    }
  }
  return false;
}

double SpectralMeasure::tempered_mass() const {
  switch (kind_) {
    case Kind::lebesgue:
      return kPi;
    case Kind::power_law:
      // 2 \int_0^inf u^{1-2H} / (1+u^2) du = pi / sin(pi H)
      return kPi / std::sin(kPi * H_);
    case Kind::atoms:
      return (w_.array() / (1.0 + pts_.array().square())).sum();
    case Kind::density:
      return rho_rule_.integrate(
          [&](double u) { return rho_(u) / (1.0 + u * u); });
  }
  return 0.0;
}

double SpectralMeasure::mass_0t(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("mass_0t: t >= 0");
  switch (kind_) {
    case Kind::lebesgue:
      return t;
    case Kind::power_law:
      return std::pow(t, 2.0 - 2.0 * H_) / (2.0 - 2.0 * H_);
    case Kind::atoms: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < pts_.size(); ++i)
        if (pts_[i] >= 0.0 && pts_[i] <= t) m += w_[i];
      return m;
    }
    case Kind::density: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < rho_rule_.size(); ++i) {
        const double u = rho_rule_.nodes[i];
        if (u >= 0.0 && u <= t) m += rho_rule_.weights[i] * rho_(u);
      }
      return m;
    }
  }
  return 0.0;
}

double SpectralMeasure::tail_beyond(double U) const {
  switch (kind_) {
    case Kind::lebesgue:
      return 2.0 / U;
    case Kind::power_law:
      return std::pow(U, -2.0 * H_) / H_;
    case Kind::atoms: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < pts_.size(); ++i)
        if (std::abs(pts_[i]) > U) m += w_[i] / (pts_[i] * pts_[i]);
      return m;
    }
    case Kind::density:
      throw std::logic_error("tail_beyond: no closed form for a density handle");
  }
  return 0.0;
}

QuadratureRule SpectralMeasure::schwartz_rule(int D) const {
  if (D < 1) throw std::invalid_argument("schwartz_rule: D >= 1");
  // products of two xi up to xi_D oscillate with wavenumber <= 2 sqrt(2D+1)
  // and live inside |u| <= sqrt(2D+1) plus an Airy skirt; panel width is
  // chosen to keep ~10 Gauss points per fastest wavelength.  (A weight-
  // stripped Gauss-Hermite rule looks tempting here but its large-|u|
  // weights are ruinously noise-amplified once D grows.)
  const double turn = std::sqrt(2.0 * D + 1.0);
  const double U = turn + 6.0;
  const double width = 4.0 * kPi / (2.0 * turn);
  switch (kind_) {
    case Kind::lebesgue: {
      const int npan = static_cast<int>(std::ceil(2.0 * U / width));
      return panels(-U, U, npan, 20);
    }
    case Kind::power_law: {
      // half-line: log panels resolve the |u|^{1-2H} singularity up to 1,
      // plain panels carry the oscillatory bulk; the [0, 1e-20] head is
      // handled analytically by the callers that need it (hermite_gram,
      // integrate_squared)
      const double sigma = 1.0 - 2.0 * H_;
      const int npan = static_cast<int>(std::ceil((U - 1.0) / width));
      const QuadratureRule pos =
          concat(log_panels(1e-20, 1.0, 4, 20), panels(1.0, U, npan, 20));
      QuadratureRule r;
      const Eigen::Index n = pos.size();
      r.nodes.resize(2 * n);
      r.weights.resize(2 * n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = pos.nodes[i];
        const double w = pos.weights[i] * std::pow(u, sigma);
        r.nodes[i] = -u;
        r.weights[i] = w;
        r.nodes[n + i] = u;
        r.weights[n + i] = w;
      }
      return r;
    }
    case Kind::atoms: {
      QuadratureRule r;
      r.nodes = pts_;
      r.weights = w_;
      return r;
    }
    case Kind::density: {
      QuadratureRule r = rho_rule_;
      for (Eigen::Index i = 0; i < r.size(); ++i)
        r.weights[i] *= rho_(r.nodes[i]);
      return r;
    }
  }
  return {};
}

Eigen::MatrixXd SpectralMeasure::hermite_gram(int D) const {
  if (D < 1) throw std::invalid_argument("hermite_gram: D >= 1");
  // Lebesgue is the defining orthonormality of the xi: exact
  if (kind_ == Kind::lebesgue) return Eigen::MatrixXd::Identity(D, D);
  const QuadratureRule rule = schwartz_rule(D);
  const Eigen::MatrixXd V = hermite_function_table(D, rule.nodes);
  Eigen::MatrixXd G = V.transpose() * rule.weights.asDiagonal() * V;
  if (kind_ == Kind::power_law) {
    // analytic head for [0, 1e-20]: 2 xi_n(0) xi_m(0) d^{sigma+1}/(sigma+1)
    const double sigma = 1.0 - 2.0 * H_;
    const double head = 2.0 * std::pow(1e-20, sigma + 1.0) / (sigma + 1.0);
    const Eigen::VectorXd xi0 = hermite_function_values(D, 0.0);
    G += head * xi0 * xi0.transpose();
  }
  return 0.5 * (G + G.transpose());
}

double integrate_squared(const SpectralMeasure& mu, const TestFunction& s) {
  if (!s.is_span()) {
    if (mu.kind() == SpectralMeasure::Kind::density)
      throw std::invalid_argument(
          "integrate_squared: indicators against a density handle are unsupported");
    return mu.mass_0t(s.upper());
  }
  // Parseval for the orthonormal basis: exact
  if (mu.kind() == SpectralMeasure::Kind::lebesgue)
    return s.coeffs().squaredNorm();
  const QuadratureRule rule = mu.schwartz_rule(s.dim());
  const Eigen::MatrixXd V = hermite_function_table(s.dim(), rule.nodes);
  const Eigen::VectorXcd vals = V.cast<std::complex<double>>() * s.coeffs();
  double out = (rule.weights.array() * vals.array().abs2()).sum();
  if (mu.kind() == SpectralMeasure::Kind::power_law) {
    const double sigma = 1.0 - 2.0 * mu.hurst();
    out += std::norm(s(0.0)) * 2.0 * std::pow(1e-20, sigma + 1.0) / (sigma + 1.0);
  }
  if (out < 0.0 && out > -1e-14) out = 0.0;
  return out;
}

namespace {

struct IValue {
  double value;
  double error;
};

// I(a) = \int_R (1 - cos(a u)) u^{-2} dmu(u) for the lebesgue / power-law
// weights |u|^sigma du, sigma = 1 - 2H.  Head [0, 1e-6] by Taylor
// expansion, body by log + oscillation-resolved panels, tail beyond U by
// the exact integral of u^{sigma-2} with the oscillatory remainder bounded
// through integration by parts.
IValue osc_I(double sigma, double a, double tol) {
  a = std::abs(a);
  if (a == 0.0) return {0.0, 0.0};

  const double delta = 1e-6;
  const double head = a * a * std::pow(delta, sigma + 1.0) / (2.0 * (sigma + 1.0)) -
                      std::pow(a, 4) * std::pow(delta, sigma + 3.0) / (24.0 * (sigma + 3.0));
  const double head_err =
      std::pow(a, 6) * std::pow(delta, sigma + 5.0) / (720.0 * (sigma + 5.0));

  double U = std::pow(4.0 / (a * std::max(tol, 1e-12)), 1.0 / (2.0 - sigma));
  U = std::clamp(U, 10.0, 1e5);

  const auto f = [&](double u) {
    return (1.0 - std::cos(a * u)) * std::pow(u, sigma - 2.0);
  };
  const QuadratureRule low = log_panels(delta, 1.0, 4, 16);
  double body = low.integrate(f);
  const double width = std::min(1.0, 0.5 * kPi / a);
  const int npan = static_cast<int>(std::ceil((U - 1.0) / width));
  body += panels(1.0, U, npan, 12).integrate(f);

  const double tail_exact = std::pow(U, sigma - 1.0) / (1.0 - sigma);
  // |\int_U^inf cos(a u) u^{sigma-2} du| <= 2 U^{sigma-2} / a, and never
  // worse than the crude bound 2 \int_U^inf u^{sigma-2} du
  const double osc_rem =
      std::min(2.0 * std::pow(U, sigma - 2.0) / a, 2.0 * tail_exact);

  return {2.0 * (head + body + tail_exact), 2.0 * (head_err + osc_rem)};
}

std::complex<double> indicator_integrand(double u, double t1, double t2) {
  if (std::abs(u) < 1e-8) {
    // (e^{i t1 u} - 1)(e^{-i t2 u} - 1) / u^2 -> t1 t2 as u -> 0
    return t1 * t2;
  }
  const std::complex<double> e1 = std::exp(std::complex<double>(0.0, t1 * u)) - 1.0;
  const std::complex<double> e2 = std::exp(std::complex<double>(0.0, -t2 * u)) - 1.0;
  return e1 * e2 / (u * u);
}

}  // namespace

PairingValue indicator_pairing(const SpectralMeasure& mu, double t1, double t2,
                               double abs_tol) {
  if (!(t1 > 0.0 && t2 > 0.0))
    throw std::invalid_argument("indicator_pairing: t1, t2 > 0");
  if (!mu.is_symmetric())
    throw std::invalid_argument(
        "indicator_pairing: measure must be symmetric under u -> -u "
        "(the pairing would be complex)");

  switch (mu.kind()) {
    case SpectralMeasure::Kind::atoms:
    case SpectralMeasure::Kind::density: {
      const QuadratureRule rule = mu.schwartz_rule(8);
      std::complex<double> v = 0.0;
      for (Eigen::Index i = 0; i < rule.size(); ++i)
        v += rule.weights[i] * indicator_integrand(rule.nodes[i], t1, t2);
      if (std::abs(v.imag()) > 1e-9)
        throw std::runtime_error(
            "indicator_pairing: imaginary part survived symmetrization");
      return {v, mu.kind() == SpectralMeasure::Kind::atoms ? 0.0 : abs_tol};
    }
    case SpectralMeasure::Kind::lebesgue:
    case SpectralMeasure::Kind::power_law: {
      const double sigma = 1.0 - 2.0 * mu.hurst();
      const double each = abs_tol / 3.0;
      const IValue i1 = osc_I(sigma, t1, each);
      const IValue i2 = osc_I(sigma, t2, each);
      const IValue i12 = osc_I(sigma, t1 - t2, each);
      const double est = i1.error + i2.error + i12.error;
      if (est > std::max(1e-2, 10.0 * abs_tol))
        throw QuadratureError("indicator_pairing: oscillatory tail did not converge", est);
      return {std::complex<double>(i1.value + i2.value - i12.value, 0.0), est};
    }
  }
  throw std::logic_error("indicator_pairing: unreachable");
}

}  // namespace wns
