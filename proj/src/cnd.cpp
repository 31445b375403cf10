#include "wns/cnd.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wns/rng.hpp"

namespace wns {

namespace {

/// fourier-side Gram: \int \hat{xi}_n conj(\hat{xi}_m) dmu
//   = 2 pi i^{m-n} G_mu[n,m], nonzero only for even m-n when mu is symmetric
Eigen::MatrixXd fourier_gram(const SpectralMeasure& mu, int D) {
  if (!mu.is_symmetric())
    throw std::invalid_argument(
        "fourier model: spectral measure must be symmetric under u -> -u");
  const Eigen::MatrixXd G = mu.hermite_gram(D);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(D, D);
  for (int n = 0; n < D; ++n)
    for (int m = 0; m < D; ++m) {
      const int d = m - n;
      if (d % 2 != 0) continue;  // odd entries vanish for symmetric mu
      const double sign = (d % 4 == 0) ? 1.0 : -1.0;  // i^{m-n} on even d
      out(n, m) = 2.0 * std::numbers::pi * sign * G(n, m);
    }
  return 0.5 * (out + out.transpose());
}

const Eigen::VectorXcd& span_coeffs(const TestFunction& s, const char* who) {
  if (!s.is_span())
    throw std::invalid_argument(std::string(who) + ": hermite spans only");
  return s.coeffs();
}

}  // namespace

CndModel CndModel::l2(SpectralMeasure mu, int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("CndModel: basis_size >= 1");
  if (!std::isfinite(mu.tempered_mass()))
    throw std::invalid_argument("CndModel: measure is not tempered");
  CndModel m;
  m.kind_ = Kind::l2;
  m.form_ = mu.hermite_gram(basis_size);
  m.mu_ = std::move(mu);
  m.name_ = "l2";
  return m;
}

CndModel CndModel::fourier(SpectralMeasure mu, int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("CndModel: basis_size >= 1");
  if (!std::isfinite(mu.tempered_mass()))
    throw std::invalid_argument("CndModel: measure is not tempered");
  CndModel m;
  m.kind_ = Kind::fourier;
  m.form_ = fourier_gram(mu, basis_size);
  m.mu_ = std::move(mu);
  m.name_ = "fourier";
  return m;
}

CndModel CndModel::mixture(SpectralMeasure mu, double u, int basis_size) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("CndModel: mixture weight must lie in [0, 1]");
  if (!std::isfinite(mu.tempered_mass()))
    throw std::invalid_argument("CndModel: measure is not tempered");
  CndModel m;
  m.kind_ = Kind::mixture;
  m.u_ = u;
  m.form_ = u * mu.hermite_gram(basis_size) +
            (1.0 - u) * fourier_gram(mu, basis_size);
  m.mu_ = std::move(mu);
  m.name_ = "mixture";
  return m;
}

CndModel CndModel::custom(std::string name,
                          std::function<double(const TestFunction&)> N) {
  if (!N) throw std::invalid_argument("CndModel: empty functional");
  CndModel m;
  m.kind_ = Kind::custom;
  m.hook_ = std::move(N);
  m.name_ = std::move(name);
  return m;
}

const SpectralMeasure& CndModel::measure() const {
  if (kind_ == Kind::custom)
    throw std::logic_error("CndModel: custom models carry no spectral measure");
  return mu_;
}

const Eigen::MatrixXd& CndModel::quadratic_form() const {
  if (!is_quadratic())
    throw std::logic_error("CndModel: no quadratic form on a custom model");
  return form_;
}

double CndModel::evaluate(const TestFunction& s) const {
  if (kind_ == Kind::custom) {
    const double v = hook_(s);
    if (!std::isfinite(v) || v < 0.0)
      throw std::runtime_error("CndModel '" + name_ + "': N(s) must be finite and >= 0");
    return v;
  }
  if (!s.is_span()) {
    const double t = s.upper();
    return indicator_bilinear(t, t);
  }
  if (s.dim() != basis_size())
    throw std::invalid_argument("CndModel: basis size mismatch");
  const std::complex<double> v = s.coeffs().dot(form_ * s.coeffs());
  double out = v.real();
  const double scale =
      std::max(1.0, form_.cwiseAbs().maxCoeff() * s.coeffs().squaredNorm());
  if (out < 0.0 && out > -1e-12 * scale) out = 0.0;
  if (out < 0.0)
    throw std::runtime_error("CndModel: negative N(s), form lost positivity");
  return out;
}

double CndModel::bilinear(const TestFunction& s1, const TestFunction& s2) const {
  if (!s1.is_real() || !s2.is_real())
    throw std::invalid_argument("bilinear: real test functions only");
  if (!s1.is_span() && !s2.is_span())
    return indicator_bilinear(s1.upper(), s2.upper());
  if (!is_quadratic()) {
    // polarization; callers are expected to have run the parallelogram gate
    return 0.25 * (evaluate(combine(1.0, s1, 1.0, s2)) -
                   evaluate(combine(1.0, s1, -1.0, s2)));
  }
  return bilinear_c(s1, s2).real();
}

std::complex<double> CndModel::bilinear_c(const TestFunction& s1,
                                          const TestFunction& s2) const {
  const auto& c1 = span_coeffs(s1, "bilinear_c");
  const auto& c2 = span_coeffs(s2, "bilinear_c");
  return c1.transpose() * quadratic_form() * c2;
}

std::complex<double> CndModel::sesquilinear(const TestFunction& s1,
                                            const TestFunction& s2) const {
  const auto& c1 = span_coeffs(s1, "sesquilinear");
  const auto& c2 = span_coeffs(s2, "sesquilinear");
  return c1.dot(quadratic_form() * c2);
}

double CndModel::indicator_bilinear(double t1, double t2) const {
  switch (kind_) {
    case Kind::l2:
      return mu_.mass_0t(std::min(t1, t2));
    case Kind::fourier:
      return indicator_pairing(mu_, t1, t2).value.real();
    case Kind::mixture:
      return u_ * mu_.mass_0t(std::min(t1, t2)) +
             (1.0 - u_) * indicator_pairing(mu_, t1, t2).value.real();
    case Kind::custom:
      throw std::logic_error("indicator_bilinear: not available on custom models");
  }
  return 0.0;
}

double CndModel::phi_kernel(const TestFunction& s1, const TestFunction& s2) const {
  return 0.5 * (evaluate(s1) + evaluate(s2) -
                evaluate(combine(1.0, s1, -1.0, s2)));
}

double CndModel::q_kernel(double lambda, const TestFunction& s) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("q_kernel: lambda > 0");
  return std::exp(-0.5 * lambda * lambda * evaluate(s));
}

double parallelogram_defect(const CndModel& model, int dim, int trials,
                            std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    Eigen::VectorXd a(dim), b(dim);
    for (int i = 0; i < dim; ++i) a[i] = rng.normal();
    for (int i = 0; i < dim; ++i) b[i] = rng.normal();
    const TestFunction s = TestFunction::hermite_span(a);
    const TestFunction u = TestFunction::hermite_span(b);
    const double lhs = model.evaluate(combine(1.0, s, 1.0, u)) +
                       model.evaluate(combine(1.0, s, -1.0, u));
    const double rhs = 2.0 * model.evaluate(s) + 2.0 * model.evaluate(u);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

CndCheckResult check_cnd(const CndModel& model,
                         const std::vector<TestFunction>& generators,
                         int trials, std::uint64_t seed) {
  const int n = static_cast<int>(generators.size());
  if (n < 2) throw std::invalid_argument("check_cnd: need at least 2 generators");

  Eigen::MatrixXd N(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      N(j, k) = (j == k) ? 0.0
                         : model.evaluate(combine(1.0, generators[j], -1.0,
                                                  generators[k]));
  const double scale = std::max(1.0, N.cwiseAbs().maxCoeff());

  CndCheckResult res{true, -std::numeric_limits<double>::infinity(), {}};
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    Eigen::VectorXd re(n), im(n);
    for (int i = 0; i < n; ++i) re[i] = rng.normal();
    for (int i = 0; i < n; ++i) im[i] = rng.normal();
    re.array() -= re.mean();
    im.array() -= im.mean();
    const double nrm = std::sqrt(re.squaredNorm() + im.squaredNorm());
    if (nrm < 1e-12) continue;
    re /= nrm;
    im /= nrm;
    // sum_{j,k} c_j conj(c_k) N_jk with N real symmetric
    const double form = re.dot(N * re) + im.dot(N * im);
    if (form > res.worst) {
      res.worst = form;
      if (form > 1e-8 * scale) {
        res.pass = false;
        res.witness["value"] = form;
        res.witness["coeff_re"] = std::vector<double>(re.data(), re.data() + n);
        res.witness["coeff_im"] = std::vector<double>(im.data(), im.data() + n);
      }
    }
  }
  return res;
}

namespace {
KernelGram finish_gram(Eigen::MatrixXd G, std::string kind, double lambda) {
  KernelGram out;
  out.G = 0.5 * (G + G.transpose());
  out.kind = std::move(kind);
  out.lambda = lambda;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.G,
                                                    Eigen::EigenvaluesOnly);
  out.min_eig = es.eigenvalues().minCoeff();
  out.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}
}  // namespace

KernelGram build_phi_gram(const CndModel& model,
                          const std::vector<TestFunction>& generators) {
  const int n = static_cast<int>(generators.size());
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k)
      G(j, k) = G(k, j) = model.phi_kernel(generators[j], generators[k]);
  return finish_gram(std::move(G), "phi", 1.0);
}

KernelGram build_q_gram(const CndModel& model, double lambda,
                        const std::vector<TestFunction>& generators) {
  const int n = static_cast<int>(generators.size());
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k)
      G(j, k) = G(k, j) = model.q_kernel(
          lambda, combine(1.0, generators[j], -1.0, generators[k]));
  return finish_gram(std::move(G), "q", lambda);
}

nlohmann::json to_json(const KernelGram& g) {
  nlohmann::json j;
  j["kind"] = g.kind;
  j["lambda"] = g.lambda;
  j["size"] = g.G.rows();
  j["min_eig"] = g.min_eig;
  j["spectral_radius"] = g.spectral_radius;
  j["psd"] = g.psd();
  return j;
}

std::string to_csv(const KernelGram& g) {
  std::ostringstream os;
  os.precision(17);
  os << "row";
  for (Eigen::Index k = 0; k < g.G.cols(); ++k) os << ",g" << k;
  os << "\n";
  for (Eigen::Index j = 0; j < g.G.rows(); ++j) {
    os << j;
    for (Eigen::Index k = 0; k < g.G.cols(); ++k) os << "," << g.G(j, k);
    os << "\n";
  }
  return os.str();
}

}  // namespace wns
