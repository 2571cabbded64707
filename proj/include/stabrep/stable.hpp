#pragma once

#include <functional>

#include "stabrep/lr.hpp"
#include "stabrep/weyl.hpp"

namespace stabrep {

// A family of Hom(mu, lambda) pairs: lambda = [alpha, beta, gamma],
// mu = [alpha + a, beta + b, delta] with alpha, beta left free.
struct HomFamily {
  int k = 0, l = 0;
  std::vector<int> a, b;
  Partition gamma, delta;
};

inline HomFamily make_family(int k, int l, std::vector<int> a, std::vector<int> b,
                             Partition gamma, Partition delta) {
  if (k < 0 || l < 0) throw InvalidTriple("k, l must be nonnegative");
  if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != l)
    throw InvalidTriple("a/b lengths must equal k/l");
  return HomFamily{k, l, std::move(a), std::move(b), std::move(gamma), std::move(delta)};
}

struct FamilyInstance {
  Partition lambda_n, mu_n;
  int n = 0;
};

namespace stabledetail {

inline Partition meet(const Partition& x, const Partition& y) {
  std::vector<int> v;
  for (int i = 1; i <= std::min(x.length(), y.length()); ++i)
    v.push_back(std::min(x.part(i), y.part(i)));
  return Partition(std::move(v));
}

// All partitions contained in bound, optionally of exact size.
inline std::vector<Partition> subpartitions(const Partition& bound, long long exact_size = -1) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int row, long long sz) -> void {
    if (exact_size < 0 || sz == exact_size) {
      std::vector<int> v = cur;
      out.push_back(Partition(std::move(v)));
    }
    if (row > bound.length()) return;
    int hi = std::min(bound.part(row), row == 1 ? INT32_MAX : cur[row - 2]);
    for (int x = 1; x <= hi; ++x) {
      if (exact_size >= 0 && sz + x > exact_size) break;
      cur.push_back(x);
      self(self, row + 1, sz + x);
      cur.pop_back();
    }
  };
  rec(rec, 1, 0);
  return out;
}

// Compositions c with c_i >= lo_i and sum = total.
inline void compositions(const std::vector<int>& lo, long long total, std::vector<int>& cur,
                         size_t i, const std::function<void()>& leaf) {
  if (i == lo.size()) {
    if (total == 0) leaf();
    return;
  }
  long long rest = 0;
  for (size_t j = i; j < lo.size(); ++j) rest += lo[j];
  if (rest > total) return;
  for (long long x = lo[i]; x <= total - (rest - lo[i]); ++x) {
    cur[i] = static_cast<int>(x);
    compositions(lo, total - x, cur, i + 1, leaf);
  }
}

inline std::vector<int> plus(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> v(x.size());
  for (size_t i = 0; i < x.size(); ++i) v[i] = x[i] + y[i];
  return v;
}

}  // namespace stabledetail

// dim Hom_{GL_n}(V_bnu, V_lambda (x) V_mu^*) = <s_{lambda/nu}, s_{mu/nubar}>
// in the rank range where the skew pairing is exact.
inline Int finite_hom_multiplicity_gl(const Partition& lambda, const Partition& mu,
                                      const Bipartition& bnu, int n) {
  int need = std::min(lambda.length() + bnu.minus.length(), mu.length() + bnu.plus.length());
  if (n < need)
    throw RankTooSmall("n = " + std::to_string(n) + " below the pairing bound " + std::to_string(need));
  if (!contains(lambda, bnu.plus) || !contains(mu, bnu.minus)) return 0;
  return skew_pairing(SkewShape(lambda, bnu.plus), SkewShape(mu, bnu.minus));
}

// The closed stable formula: sum over shifts (c, d) and common subdiagrams
// epsilon of gamma and delta of products of composite-shape LR counts.
inline Int stable_hom_multiplicity_gl(const HomFamily& f, const Bipartition& bnu) {
  using namespace stabledetail;
  long long shift = 0;
  for (int x : f.a) shift += x;
  for (int x : f.b) shift += x;
  if (bnu.minus.size() - bnu.plus.size() != shift + f.delta.size() - f.gamma.size()) return 0;
  std::vector<int> clo(f.k), dlo(f.l);
  for (int i = 0; i < f.k; ++i) clo[i] = std::max(0, -f.a[i]);
  for (int j = 0; j < f.l; ++j) dlo[j] = std::max(0, -f.b[j]);
  Int total = 0;
  for (const Partition& eps : subpartitions(meet(f.gamma, f.delta))) {
    long long S = bnu.plus.size() - f.gamma.size() + eps.size();
    if (S < 0) continue;
    SkewShape strip1(f.gamma, eps), strip2(f.delta, eps);
    std::vector<int> c(f.k);
    compositions(clo, S, c, 0, [&] {
      long long used = 0;
      for (int x : c) used += x;
      std::vector<int> dcur(f.l);
      compositions(dlo, S - used, dcur, 0, [&] {
        Int m1 = lr_weight_count(c, dcur, strip1, bnu.plus);
        if (m1 == 0) return;
        Int m2 = lr_weight_count(plus(c, f.a), plus(dcur, f.b), strip2, bnu.minus);
        total += m1 * m2;
      });
    });
  }
  return total;
}

// O/Sp analogue: an extra LR contraction couples the two composite shapes.
inline Int stable_hom_multiplicity_osp(const HomFamily& f, const Partition& nu) {
  using namespace stabledetail;
  long long shift = 0;
  for (int x : f.a) shift += x;
  for (int x : f.b) shift += x;
  std::vector<int> clo(f.k), dlo(f.l);
  for (int i = 0; i < f.k; ++i) clo[i] = std::max(0, -f.a[i]);
  for (int j = 0; j < f.l; ++j) dlo[j] = std::max(0, -f.b[j]);
  Int total = 0;
  for (const Partition& eps : subpartitions(meet(f.gamma, f.delta))) {
    long long twoS = nu.size() - f.gamma.size() - f.delta.size() + 2 * eps.size() - shift;
    if (twoS < 0 || twoS % 2) continue;
    long long S = twoS / 2;
    SkewShape strip1(f.gamma, eps), strip2(f.delta, eps);
    std::vector<int> c(f.k);
    compositions(clo, S, c, 0, [&] {
      long long used = 0;
      for (int x : c) used += x;
      std::vector<int> dcur(f.l);
      compositions(dlo, S - used, dcur, 0, [&] {
        auto e1 = skew_schur_expand(composite_shape(c, dcur, strip1).shape);
        auto e2 = skew_schur_expand(composite_shape(plus(c, f.a), plus(dcur, f.b), strip2).shape);
        for (const auto& [om, m1] : e1) {
          if (!contains(nu, om)) continue;
          for (const auto& [xi, m2] : e2) total += m1 * m2 * lr_coefficient(nu, om, xi);
        }
      });
    });
  }
  return total;
}

// Sum_{eta, omega, xi} c^lambda_{eta omega} c^mu_{eta xi} c^nu_{omega xi};
// the stable O/Sp branching multiplicity in the range n >= |lambda| + |mu|.
inline Int king_multiplicity(const Partition& lambda, const Partition& mu, const Partition& nu) {
  using namespace stabledetail;
  long long twoH = lambda.size() + mu.size() - nu.size();
  if (twoH < 0 || twoH % 2) return 0;
  Int total = 0;
  for (const Partition& eta : subpartitions(meet(lambda, mu), twoH / 2)) {
    auto e1 = skew_schur_expand(SkewShape(lambda, eta));
    auto e2 = skew_schur_expand(SkewShape(mu, eta));
    for (const auto& [om, m1] : e1) {
      if (!contains(nu, om)) continue;
      for (const auto& [xi, m2] : e2) total += m1 * m2 * lr_coefficient(nu, om, xi);
    }
  }
  return total;
}

inline FamilyInstance instantiate_family(const HomFamily& f, const std::vector<int>& alpha_vals,
                                         const std::vector<int>& beta_vals, int n) {
  try {
    using stabledetail::plus;
    Partition lam = assemble(alpha_vals, beta_vals, f.gamma, f.k, f.l);
    Partition mu = assemble(plus(alpha_vals, f.a), plus(beta_vals, f.b), f.delta, f.k, f.l);
    if (lam.length() > n || mu.length() > n)
      throw InvalidInstance("instantiated shapes need more than " + std::to_string(n) + " rows");
    return FamilyInstance{std::move(lam), std::move(mu), n};
  } catch (const InvalidTriple& e) {
    throw InvalidInstance(e.what());
  } catch (const NotPartition& e) {
    throw InvalidInstance(e.what());
  }
}

// Growing-gap instantiation: alpha spaced by g*(k-i+1)*n; beta spaced inside
// the row budget n - k, since beta turns into column heights.
inline std::pair<std::vector<int>, std::vector<int>> default_instantiation(const HomFamily& f, int n) {
  int g = 2;
  for (int x : f.a) g = std::max(g, std::abs(x) + 1);
  for (int x : f.b) g = std::max(g, std::abs(x) + 1);
  g = std::max({g, f.gamma.part(1) + 1, f.delta.part(1) + 1, f.gamma.length() + 1, f.delta.length() + 1});
  std::vector<int> av(f.k), bv(f.l);
  // alpha_i - alpha_{i+1} = g*(k-i+1)*n exactly, via triangular numbers.
  for (int i = 0; i < f.k; ++i) {
    int m = f.k - i;
    av[i] = g * n * (m * (m + 1) / 2);
  }
  if (f.l > 0) {
    int base = std::max(f.gamma.length(), f.delta.length());
    int s = (n - f.k - base) / f.l;
    int need = 1;
    for (int j = 0; j + 1 < f.l; ++j) need = std::max(need, f.b[j] - f.b[j + 1] + 1);
    for (int j = 0; j < f.l; ++j) need = std::max(need, -f.b[j] + 1);
    if (s < need)
      throw InvalidInstance("rank " + std::to_string(n) + " leaves no room for growing beta gaps");
    for (int j = 0; j < f.l; ++j) bv[j] = base + (f.l - j) * s;
  }
  return {av, bv};
}

struct StabilityReport {
  std::vector<std::pair<int, Int>> values;  // (n, oracle multiplicity)
  bool stabilized = false;
  bool has_stable_value = false;
  Int stable_value = 0;
  bool matches = false;
};

namespace stabledetail {
inline void finish(StabilityReport& rep) {
  rep.stabilized = !rep.values.empty();
  for (const auto& [n, v] : rep.values)
    if (v != rep.values.front().second) rep.stabilized = false;
  rep.matches = rep.has_stable_value && rep.stabilized && !rep.values.empty() &&
                rep.values.front().second == rep.stable_value;
}
}  // namespace stabledetail

inline StabilityReport verify_stability_gl(const HomFamily& f, const Bipartition& bnu, int n_lo, int n_hi) {
  StabilityReport rep;
  rep.has_stable_value = true;
  rep.stable_value = stable_hom_multiplicity_gl(f, bnu);
  for (int n = n_lo; n <= n_hi; ++n) {
    // a pair needing more than n rows has no constituent over gl_n at all
    if (bnu.plus.length() + bnu.minus.length() > n) {
      rep.values.emplace_back(n, 0);
      continue;
    }
    auto [av, bv] = default_instantiation(f, n);
    FamilyInstance inst = instantiate_family(f, av, bv, n);
    Group g = make_group(Series::GL, n);
    auto dec = tensor_decompose(g, bipartition_weight(bnu, n), partition_weight(inst.mu_n, n));
    auto it = dec.find(partition_weight(inst.lambda_n, n));
    rep.values.emplace_back(n, it == dec.end() ? Int(0) : it->second);
  }
  stabledetail::finish(rep);
  return rep;
}

inline StabilityReport verify_stability_osp(const HomFamily& f, const Partition& nu, Series flavor,
                                            int n_lo, int n_hi) {
  if (flavor == Series::GL) throw SeriesMismatch("osp stability needs series o or sp");
  StabilityReport rep;
  rep.has_stable_value = true;
  rep.stable_value = stable_hom_multiplicity_osp(f, nu);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto [av, bv] = default_instantiation(f, n);
    FamilyInstance inst = instantiate_family(f, av, bv, n);
    Group g = make_group(flavor, n);
    if (nu.length() > n) throw RankTooSmall("nu needs more rows than rank " + std::to_string(n));
    auto dec = tensor_decompose(g, partition_weight(nu, n), partition_weight(inst.mu_n, n));
    auto it = dec.find(partition_weight(inst.lambda_n, n));
    rep.values.emplace_back(n, it == dec.end() ? Int(0) : it->second);
  }
  stabledetail::finish(rep);
  return rep;
}

// Mixed bipartition families: oracle values only, no closed form.
inline StabilityReport mixed_stable_multiplicity(const HomFamily& plus_f, const HomFamily& minus_f,
                                                 const Bipartition& bnu, int n_lo, int n_hi) {
  StabilityReport rep;
  for (int n = n_lo; n <= n_hi; ++n) {
    auto [pav, pbv] = default_instantiation(plus_f, n);
    auto [mav, mbv] = default_instantiation(minus_f, n);
    FamilyInstance pi = instantiate_family(plus_f, pav, pbv, n);
    FamilyInstance mi = instantiate_family(minus_f, mav, mbv, n);
    if (pi.lambda_n.length() + mi.lambda_n.length() > n ||
        pi.mu_n.length() + mi.mu_n.length() > n)
      throw InvalidInstance("mixed instantiation exceeds " + std::to_string(n) + " rows");
    Group g = make_group(Series::GL, n);
    Weight wl = bipartition_weight(Bipartition{pi.lambda_n, mi.lambda_n}, n);
    Weight wm = bipartition_weight(Bipartition{pi.mu_n, mi.mu_n}, n);
    auto dec = tensor_decompose(g, bipartition_weight(bnu, n), wm);
    auto it = dec.find(wl);
    rep.values.emplace_back(n, it == dec.end() ? Int(0) : it->second);
  }
  stabledetail::finish(rep);
  return rep;
}

}  // namespace stabrep
