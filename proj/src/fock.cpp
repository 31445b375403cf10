#include "wns/fock.hpp"

#include <cmath>

namespace wns {

int degree(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

double multi_factorial(const MultiIndex& a) {
  unsigned __int128 f = 1;
  for (int v : a) {
    if (v < 0) throw std::invalid_argument("multi_factorial: negative entry");
    for (int k = 2; k <= v; ++k) f *= static_cast<unsigned>(k);
  }
  return static_cast<double>(f);
}

namespace {
void enumerate(int modes, int K, MultiIndex& cur, int pos, int left,
               std::vector<MultiIndex>& out) {
  if (pos == modes - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[pos] = v;
    enumerate(modes, K, cur, pos + 1, left - v, out);
  }
}
}  // namespace

FockBasis::FockBasis(Truncation t) : tr_(t) {
  MultiIndex cur(t.modes, 0);
  for (int total = 0; total <= t.max_degree; ++total)
    enumerate(t.modes, t.max_degree, cur, 0, total, list_);
  for (int i = 0; i < static_cast<int>(list_.size()); ++i) pos_[list_[i]] = i;
}

int FockBasis::index(const MultiIndex& a) const {
  const auto it = pos_.find(a);
  return it == pos_.end() ? -1 : it->second;
}

void FockVector::add(const MultiIndex& a, std::complex<double> w) {
  if (w == 0.0) return;
  auto [it, fresh] = amps.try_emplace(a, w);
  if (!fresh) {
    it->second += w;
    if (it->second == 0.0) amps.erase(it);
  }
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& [a, w] : amps) s += std::norm(w);
  return std::sqrt(s);
}

FockVector& FockVector::operator*=(std::complex<double> z) {
  for (auto& [a, w] : amps) w *= z;
  return *this;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (!(trunc == o.trunc))
    throw std::invalid_argument("FockVector: truncation mismatch");
  for (const auto& [a, w] : o.amps) add(a, w);
  dropped_weight += o.dropped_weight;
  return *this;
}

std::complex<double> inner(const FockVector& v, const FockVector& w) {
  if (!(v.trunc == w.trunc))
    throw std::invalid_argument("inner: truncation mismatch");
  // iterate the smaller map
  const auto& small = v.amps.size() <= w.amps.size() ? v.amps : w.amps;
  const auto& big = v.amps.size() <= w.amps.size() ? w.amps : v.amps;
  const bool small_is_v = v.amps.size() <= w.amps.size();
  std::complex<double> s = 0.0;
  for (const auto& [a, x] : small) {
    const auto it = big.find(a);
    if (it == big.end()) continue;
    s += small_is_v ? std::conj(x) * it->second : std::conj(it->second) * x;
  }
  return s;
}

FockVector basis_state(Truncation t, const MultiIndex& a) {
  if (static_cast<int>(a.size()) != t.modes)
    throw std::invalid_argument("basis_state: wrong number of modes");
  if (degree(a) > t.max_degree)
    throw std::invalid_argument("basis_state: degree exceeds the truncation");
  FockVector v(t);
  v.add(a, 1.0);
  return v;
}

FockVector annihilate(const FockVector& v, int j) {
  if (j < 0 || j >= v.trunc.modes)
    throw std::invalid_argument("annihilate: mode out of range");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps) {
    if (a[j] == 0) continue;
    MultiIndex b = a;
    b[j] -= 1;
    out.add(b, w * std::sqrt(static_cast<double>(a[j])));
  }
  return out;
}

FockVector create(const FockVector& v, int j) {
  if (j < 0 || j >= v.trunc.modes)
    throw std::invalid_argument("create: mode out of range");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps) {
    if (degree(a) >= v.trunc.max_degree) {
      out.dropped_weight += std::norm(w) * (a[j] + 1.0);
      continue;
    }
    MultiIndex b = a;
    b[j] += 1;
    out.add(b, w * std::sqrt(static_cast<double>(b[j])));
  }
  return out;
}

FockVector annihilate_field(const FockVector& v, const Eigen::VectorXcd& h) {
  if (h.size() != v.trunc.modes)
    throw std::invalid_argument("annihilate_field: mode count mismatch");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps)
    for (int j = 0; j < v.trunc.modes; ++j) {
      if (a[j] == 0 || h[j] == 0.0) continue;
      MultiIndex b = a;
      b[j] -= 1;
      out.add(b, w * std::conj(h[j]) * std::sqrt(static_cast<double>(a[j])));
    }
  return out;
}

FockVector create_field(const FockVector& v, const Eigen::VectorXcd& h) {
  if (h.size() != v.trunc.modes)
    throw std::invalid_argument("create_field: mode count mismatch");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps) {
    if (degree(a) >= v.trunc.max_degree) {
      double s = 0.0;
      for (int j = 0; j < v.trunc.modes; ++j)
        s += std::norm(h[j]) * (a[j] + 1.0);
      out.dropped_weight += std::norm(w) * s;
      continue;
    }
    for (int j = 0; j < v.trunc.modes; ++j) {
      if (h[j] == 0.0) continue;
      MultiIndex b = a;
      b[j] += 1;
      out.add(b, w * h[j] * std::sqrt(static_cast<double>(b[j])));
    }
  }
  return out;
}

FockVector exponential_vector(Truncation t, const Eigen::VectorXcd& h) {
  if (h.size() != t.modes)
    throw std::invalid_argument("exponential_vector: mode count mismatch");
  const FockBasis basis(t);
  FockVector out(t);
  for (int i = 0; i < basis.dim(); ++i) {
    const MultiIndex& a = basis.at(i);
    std::complex<double> amp = 1.0;
    for (int j = 0; j < t.modes; ++j)
      for (int k = 0; k < a[j]; ++k) amp *= h[j];
    if (amp == 0.0) continue;
    out.add(a, amp / std::sqrt(multi_factorial(a)));
  }
  return out;
}

double exponential_tail_bound(double norm_h1, double norm_h2, int K) {
  const double r = norm_h1 * norm_h2;
  double term = 1.0;
  for (int n = 1; n <= K + 1; ++n) term *= r / n;
  // sum_{n > K} r^n / n! <= r^{K+1}/(K+1)! * sum_m (r/(K+2))^m
  if (r >= K + 2) return term * std::exp(r);  // crude but safe fallback
  return term / (1.0 - r / (K + 2));
}

FockVector second_quantization(const FockVector& v, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument(
        "second_quantization: only contractive lambda in (0, 1] is bounded");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps)
    out.add(a, w * std::pow(lambda, degree(a)));
  return out;
}

FockVector chaos_multiply(const FockVector& v, const Eigen::VectorXd& h) {
  if (h.size() != v.trunc.modes)
    throw std::invalid_argument("chaos_multiply: mode count mismatch");
  FockVector out(v.trunc);
  for (const auto& [a, w] : v.amps)
    for (int j = 0; j < v.trunc.modes; ++j) {
      if (h[j] == 0.0) continue;
      // x h_n = h_{n+1} + n h_{n-1} in normalized coordinates:
      // X_j E_alpha = sqrt(alpha_j + 1) E_{alpha+1_j} + sqrt(alpha_j) E_{alpha-1_j}
      if (degree(a) < v.trunc.max_degree) {
        MultiIndex up = a;
        up[j] += 1;
        out.add(up, w * h[j] * std::sqrt(static_cast<double>(up[j])));
      } else {
        out.dropped_weight += std::norm(w * h[j]) * (a[j] + 1.0);
      }
      if (a[j] > 0) {
        MultiIndex dn = a;
        dn[j] -= 1;
        out.add(dn, w * h[j] * std::sqrt(static_cast<double>(a[j])));
      }
    }
  return out;
}

Eigen::SparseMatrix<std::complex<double>> op_matrix(const FockBasis& basis,
                                                    const FockOp& op) {
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  for (int col = 0; col < basis.dim(); ++col) {
    const FockVector out = op(basis_state(basis.trunc(), basis.at(col)));
    for (const auto& [a, w] : out.amps) {
      const int row = basis.index(a);
      if (row < 0)
        throw std::logic_error("op_matrix: operator left the truncation");
      trip.emplace_back(row, col, w);
    }
  }
  Eigen::SparseMatrix<std::complex<double>> m(basis.dim(), basis.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

double frobenius_norm(const Eigen::SparseMatrix<std::complex<double>>& m) {
  double s = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(m, k); it;
         ++it)
      s += std::norm(it.value());
  return std::sqrt(s);
}

CcrDefects ccr_defects(const FockBasis& basis, const Eigen::VectorXcd& h,
                       const Eigen::VectorXcd& g, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ccr_defects: lambda > 0");
  const std::complex<double> hg = h.dot(g);  // <h, g>, conjugate-first
  const auto scaled = [](FockVector v, std::complex<double> z) {
    v *= z;
    return v;
  };
  const auto ann = [&](const FockVector& v, const Eigen::VectorXcd& t) {
    return scaled(annihilate_field(v, t), lambda);
  };
  const auto cre = [&](const FockVector& v, const Eigen::VectorXcd& t) {
    return scaled(create_field(v, t), 1.0 / lambda);
  };

  CcrDefects d{0.0, 0.0, 0.0};
  for (int i = 0; i < basis.dim(); ++i) {
    const MultiIndex& a = basis.at(i);
    if (degree(a) > basis.trunc().max_degree - 1) continue;  // interior only
    const FockVector e = basis_state(basis.trunc(), a);

    FockVector mixed = ann(cre(e, g), h);
    mixed += scaled(cre(ann(e, h), g), -1.0);
    mixed += scaled(e, -hg);
    d.mixed = std::max(d.mixed, mixed.norm());

    FockVector aa = ann(ann(e, g), h);
    aa += scaled(ann(ann(e, h), g), -1.0);
    d.ann_pair = std::max(d.ann_pair, aa.norm());

    FockVector cc = cre(cre(e, g), h);
    cc += scaled(cre(cre(e, h), g), -1.0);
    d.cre_pair = std::max(d.cre_pair, cc.norm());
  }
  return d;
}

AdjointReport adjoint_obstruction(const FockBasis& basis,
                                  const Eigen::VectorXcd& h, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("adjoint_obstruction: lambda > 0");
  const auto scaled_ann = op_matrix(basis, [&](const FockVector& v) {
    FockVector r = annihilate_field(v, h);
    r *= lambda;
    return r;
  });
  const auto scaled_cre = op_matrix(basis, [&](const FockVector& v) {
    FockVector r = create_field(v, h);
    r *= 1.0 / lambda;
    return r;
  });
  const auto cre = op_matrix(
      basis, [&](const FockVector& v) { return create_field(v, h); });

  AdjointReport rep;
  rep.obstruction = frobenius_norm(
      Eigen::SparseMatrix<std::complex<double>>(scaled_ann.adjoint()) -
      scaled_cre);
  rep.create_norm = frobenius_norm(cre);
  rep.predicted = std::abs(lambda - 1.0 / lambda) * rep.create_norm;
  return rep;
}

nlohmann::json to_json(const FockVector& v) {
  nlohmann::json j;
  j["trunc"] = {{"d", v.trunc.modes}, {"K", v.trunc.max_degree}};
  auto arr = nlohmann::json::array();
  for (const auto& [a, w] : v.amps) {
    nlohmann::json e;
    e["alpha"] = a;
    e["re"] = w.real();
    e["im"] = w.imag();
    arr.push_back(std::move(e));
  }
  j["amps"] = std::move(arr);
  j["dropped_weight"] = v.dropped_weight;
  return j;
}

FockVector fock_vector_from_json(const nlohmann::json& j) {
  const Truncation t(j.at("trunc").at("d").get<int>(),
                     j.at("trunc").at("K").get<int>());
  FockVector v(t);
  for (const auto& e : j.at("amps")) {
    const MultiIndex a = e.at("alpha").get<std::vector<int>>();
    if (static_cast<int>(a.size()) != t.modes || degree(a) > t.max_degree)
      throw std::invalid_argument("fock vector json: index outside truncation");
    v.add(a, {e.at("re").get<double>(), e.at("im").get<double>()});
  }
  v.dropped_weight = j.value("dropped_weight", 0.0);
  return v;
}

}  // namespace wns
