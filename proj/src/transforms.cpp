#include "wns/transforms.hpp"

#include <cmath>

namespace wns {

ExpCombo ExpCombo::single(std::complex<double> c, std::complex<double> z,
                          TestFunction s) {
  if (!s.is_span() || !s.is_real())
    throw std::invalid_argument("ExpCombo: real hermite spans only");
  ExpCombo g;
  g.c = {c};
  g.z = {z};
  g.s = {std::move(s)};
  return g;
}

void require_bilinear(const CndModel& model) {
  if (model.is_quadratic()) return;
  const double defect = parallelogram_defect(model, 6, 24, 0x9a11);
  if (defect > 1e-8)
    throw std::invalid_argument(
        "transforms: model '" + model.name() +
        "' fails the parallelogram law (defect " + std::to_string(defect) +
        "), no bilinear form is available");
}

namespace {

// E[exp(sum z_j X_{s_j})] through the complex-variance closed form
std::complex<double> mgf(const GaussianField& f,
                         const std::vector<std::complex<double>>& z,
                         const std::vector<TestFunction>& s) {
  require_bilinear(f.model);
  std::complex<double> var = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j)
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double B = f.model.is_quadratic()
                           ? f.model.bilinear_c(s[j], s[k]).real()
                           : f.model.bilinear(s[j], s[k]);
      var += z[j] * z[k] * B;
    }
  return std::exp(0.5 * f.lambda * f.lambda * var);
}

}  // namespace

std::complex<double> expectation(const GaussianField& f, const ExpCombo& g) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < g.c.size(); ++j)
    acc += g.c[j] * mgf(f, {g.z[j]}, {g.s[j]});
  return acc;
}

std::complex<double> inner(const GaussianField& f, const ExpCombo& f1,
                           const ExpCombo& f2) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f1.c.size(); ++j)
    for (std::size_t k = 0; k < f2.c.size(); ++k)
      acc += std::conj(f1.c[j]) * f2.c[k] *
             mgf(f, {std::conj(f1.z[j]), f2.z[k]}, {f1.s[j], f2.s[k]});
  return acc;
}

double norm_squared(const GaussianField& f, const ExpCombo& g) {
  const std::complex<double> v = inner(f, g, g);
  return v.real();
}

Eigen::MatrixXcd gram(const GaussianField& f,
                      const std::vector<ExpCombo>& elems) {
  const int n = static_cast<int>(elems.size());
  Eigen::MatrixXcd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) G(j, k) = inner(f, elems[j], elems[k]);
  return G;
}

ExpCombo heat_exp(const TestFunction& s) {
  return ExpCombo::single(1.0, 1.0 / std::sqrt(2.0), s);
}

ExpCombo wick_exp(const GaussianField& f, const TestFunction& s) {
  return ExpCombo::single(std::exp(-0.5 * variance(f, s)), 1.0, s);
}

std::complex<double> t_transform_exp(const GaussianField& f,
                                     std::complex<double> z,
                                     const TestFunction& s,
                                     const TestFunction& probe) {
  return mgf(f, {z, {0.0, 1.0}}, {s, probe});
}

double q_kernel_at(const GaussianField& f, const TestFunction& center,
                   const TestFunction& probe) {
  return f.model.q_kernel(f.lambda, combine(1.0, probe, -1.0, center));
}

RanTransformValue r_transform_exp(const GaussianField& f,
                                  const TestFunction& s,
                                  const TestFunction& probe) {
  RanTransformValue v;
  v.via_transform = t_transform_exp(f, 1.0 / std::sqrt(2.0), s, probe);

  // N_C(probe - i s/sqrt 2) = N(probe) - N(s)/2 - i sqrt(2) B(probe, s)
  require_bilinear(f.model);
  const double B = f.model.is_quadratic()
                       ? f.model.bilinear_c(probe, s).real()
                       : f.model.bilinear(probe, s);
  const std::complex<double> nc(
      f.model.evaluate(probe) - 0.5 * f.model.evaluate(s),
      -std::sqrt(2.0) * B);
  v.closed_form = std::exp(-0.5 * f.lambda * f.lambda * nc);
  return v;
}

IntertwiningReport intertwining_check(Truncation t, const Eigen::VectorXd& h) {
  const FockBasis basis(t);
  const Eigen::VectorXcd hc = h.cast<std::complex<double>>();
  const int interior = t.max_degree - 1;

  const auto scaled = [](FockVector v, std::complex<double> z) {
    v *= z;
    return v;
  };
  double d_sum = 0.0, d_cre = 0.0, n_ann = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    const MultiIndex& a = basis.at(i);
    if (degree(a) > interior) continue;
    const FockVector e = basis_state(t, a);
    const FockVector dn = annihilate_field(e, hc);

    FockVector diff = chaos_multiply(e, h);  // M - a*
    diff += scaled(create_field(e, hc), -1.0);
    FockVector diff_sum = diff;              // M - (a + a*)
    diff_sum += scaled(dn, -1.0);

    d_sum += diff_sum.norm() * diff_sum.norm();
    d_cre += diff.norm() * diff.norm();
    n_ann += dn.norm() * dn.norm();
  }
  return {std::sqrt(d_sum), std::sqrt(d_cre), std::sqrt(n_ann)};
}

}  // namespace wns
