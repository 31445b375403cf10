#include "wns/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "wns/rng.hpp"

namespace wns {

double variance(const GaussianField& f, const TestFunction& s) {
  return f.lambda * f.lambda * f.model.evaluate(s);
}

double covariance(const GaussianField& f, const TestFunction& s1,
                  const TestFunction& s2) {
  const double l2 = f.lambda * f.lambda;
  if (!s1.is_span() && !s2.is_span()) {
    if (!f.model.is_quadratic())
      throw std::invalid_argument(
          "covariance: indicator pairs need a model with closed-form pairings");
    return l2 * f.model.indicator_bilinear(s1.upper(), s2.upper());
  }
  if (f.model.is_quadratic()) return l2 * f.model.bilinear(s1, s2);
  // custom N: the symmetrized definition
  return 0.25 * l2 *
         (f.model.evaluate(combine(1.0, s1, 1.0, s2)) -
          f.model.evaluate(combine(1.0, s1, -1.0, s2)));
}

Eigen::MatrixXd covariance_matrix(const GaussianField& f,
                                  const std::vector<TestFunction>& gens) {
  const int n = static_cast<int>(gens.size());
  if (n == 0) throw std::invalid_argument("covariance_matrix: no generators");
  Eigen::MatrixXd C(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k)
      C(j, k) = C(k, j) = covariance(f, gens[j], gens[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
  const double rad = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-9 * std::max(rad, 1e-300))
    throw std::runtime_error("covariance_matrix: result is not PSD");
  return C;
}

double moment(const GaussianField& f, const TestFunction& s, int order) {
  if (order < 1) throw std::invalid_argument("moment: order >= 1");
  if (order % 2 == 1) return 0.0;
  double dfact = 1.0;  // (order-1)!!
  for (int k = order - 1; k > 1; k -= 2) dfact *= k;
  return dfact * std::pow(variance(f, s), order / 2);
}

double characteristic_function(const GaussianField& f,
                               const std::vector<TestFunction>& gens,
                               const Eigen::VectorXd& a) {
  if (a.size() != static_cast<Eigen::Index>(gens.size()))
    throw std::invalid_argument("characteristic_function: size mismatch");
  const Eigen::MatrixXd C = covariance_matrix(f, gens);
  return std::exp(-0.5 * a.dot(C * a));
}

double joint_density(const GaussianField& f,
                     const std::vector<TestFunction>& gens,
                     const Eigen::VectorXd& x) {
  if (x.size() != static_cast<Eigen::Index>(gens.size()))
    throw std::invalid_argument("joint_density: size mismatch");
  const Eigen::MatrixXd C = covariance_matrix(f, gens);
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("joint_density: covariance is not positive definite");
  const Eigen::VectorXd y = llt.matrixL().solve(x);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    logdet += 2.0 * std::log(llt.matrixL()(i, i));
  const double n = static_cast<double>(x.size());
  return std::exp(-0.5 * (y.squaredNorm() + n * std::log(2.0 * std::numbers::pi) +
                          logdet));
}

std::vector<TestFunction> gamma_orthonormalize(
    const GaussianField& f, const std::vector<TestFunction>& gens,
    double drop_tol) {
  std::vector<TestFunction> out;
  const auto dot = [&](const TestFunction& a, const TestFunction& b) {
    // sesquilinear covariance metric on spans
    if (f.model.is_quadratic())
      return f.lambda * f.lambda * f.model.sesquilinear(a, b);
    if (!a.is_real() || !b.is_real())
      throw std::invalid_argument(
          "gamma_orthonormalize: custom models support real spans only");
    return std::complex<double>(covariance(f, a, b), 0.0);
  };
  for (const auto& g : gens) {
    if (!g.is_span())
      throw std::invalid_argument("gamma_orthonormalize: spans only");
    TestFunction v = g;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out) v = combine(1.0, v, -dot(e, v), e);
    const double nrm = std::sqrt(std::abs(dot(v, v).real()));
    if (nrm < drop_tol) continue;
    out.push_back(combine(1.0 / nrm, v, 0.0, v));
  }
  return out;
}

namespace {

Eigen::MatrixXd cholesky_with_jitter(Eigen::MatrixXd C) {
  const double trace = C.trace();
  double jitter = 0.0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(
        jitter > 0.0
            ? Eigen::MatrixXd(C + jitter * Eigen::MatrixXd::Identity(C.rows(), C.cols()))
            : C);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    jitter = (jitter == 0.0) ? 1e-14 * trace : 10.0 * jitter;
    if (jitter > 1e-10 * trace) break;
  }
  throw std::runtime_error(
      "sample: Cholesky failed within the 1e-10 * trace jitter budget");
}

}  // namespace

Eigen::MatrixXd sample(const GaussianField& f,
                       const std::vector<TestFunction>& gens, int m,
                       std::uint64_t seed) {
  if (m < 0) throw std::invalid_argument("sample: m >= 0");
  const Eigen::MatrixXd L = cholesky_with_jitter(covariance_matrix(f, gens));
  const int n = static_cast<int>(gens.size());
  Eigen::MatrixXd out(m, n);
  Eigen::VectorXd z(n);
  for (int r = 0; r < m; ++r) {
    CounterRng rng(seed, r);
    for (int i = 0; i < n; ++i) z[i] = rng.normal();
    out.row(r) = (L * z).transpose();
  }
  return out;
}

Eigen::VectorXd sample_scalar(const GaussianField& f, const TestFunction& s,
                              int m, std::uint64_t seed) {
  if (m < 0) throw std::invalid_argument("sample_scalar: m >= 0");
  const double sd = std::sqrt(variance(f, s));
  Eigen::VectorXd out(m);
  for (int r = 0; r < m; ++r) {
    CounterRng rng(seed, r);
    out[r] = sd * rng.normal();
  }
  return out;
}

}  // namespace wns
