#pragma once

#include <set>

#include "stabrep/partition.hpp"

namespace stabrep {

// Finite-rank character arithmetic used as the independent cross-check for
// every stable formula. Kept deliberately small: ranks up to 7 (type A) and 4
// (types B/C), integer weights only, everything exact.
enum class Series { GL, SO_ODD, SP };

struct Group {
  Series s;
  int n;  // rank: gl_n, so_{2n+1}, sp_{2n}
};

inline Group make_group(Series s, int n) {
  int cap = s == Series::GL ? 7 : 4;
  if (n < 1) throw RankTooSmall("rank must be at least 1");
  if (n > cap)
    throw RankCeilingExceeded("rank " + std::to_string(n) + " exceeds oracle ceiling " +
                              std::to_string(cap));
  return Group{s, n};
}

inline std::string group_name(const Group& g) {
  switch (g.s) {
    case Series::GL: return "gl_" + std::to_string(g.n);
    case Series::SO_ODD: return "so_" + std::to_string(2 * g.n + 1);
    case Series::SP: return "sp_" + std::to_string(2 * g.n);
  }
  return "";
}

using Weight = std::vector<int>;

inline void check_weight(const Group& g, const Weight& w) {
  if (static_cast<int>(w.size()) != g.n)
    throw DimensionMismatch("weight has " + std::to_string(w.size()) + " entries, rank is " +
                            std::to_string(g.n));
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[i - 1]) throw NonDominant("weight entries increase");
  if (g.s != Series::GL && !w.empty() && w.back() < 0)
    throw NonDominant("negative entry in a type B/C weight");
}

// The n-row weight of a pair (plus, minus): plus parts, zeros, then the
// negated reverse of minus.
inline Weight bipartition_weight(const Bipartition& b, int n) {
  if (b.plus.length() + b.minus.length() > n)
    throw RankTooSmall("pair needs " + std::to_string(b.plus.length() + b.minus.length()) +
                       " rows, rank is " + std::to_string(n));
  Weight w(n, 0);
  for (int i = 0; i < b.plus.length(); ++i) w[i] = b.plus.parts[i];
  for (int j = 0; j < b.minus.length(); ++j) w[n - 1 - j] = -b.minus.parts[j];
  return w;
}

inline Bipartition weight_to_bipartition(const Weight& w) {
  std::vector<int> plus, minus;
  for (int x : w)
    if (x > 0) plus.push_back(x);
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    if (*it < 0) minus.push_back(-*it);
  return Bipartition{Partition(std::move(plus)), Partition(std::move(minus))};
}

inline Weight partition_weight(const Partition& p, int n) {
  return bipartition_weight(Bipartition{p, Partition{}}, n);
}

// V_[nu]* = V_[swapped pair]
inline Bipartition dual_weight(const Bipartition& b) { return Bipartition{b.minus, b.plus}; }

namespace weyldetail {

// Doubled coordinates keep every inner product integral.
inline std::vector<int> rho2(const Group& g) {
  std::vector<int> r(g.n);
  for (int i = 1; i <= g.n; ++i) {
    switch (g.s) {
      case Series::GL: r[i - 1] = 2 * (g.n - i); break;
      case Series::SO_ODD: r[i - 1] = 2 * (g.n - i) + 1; break;
      case Series::SP: r[i - 1] = 2 * (g.n - i + 1); break;
    }
  }
  return r;
}

inline std::vector<Weight> positive_roots(const Group& g) {
  std::vector<Weight> roots;
  auto unit = [&](int i, int j, int ci, int cj) {
    Weight w(g.n, 0);
    w[i] += ci;
    if (j >= 0) w[j] += cj;
    return w;
  };
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) roots.push_back(unit(i, j, 1, -1));
  if (g.s != Series::GL)
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j) roots.push_back(unit(i, j, 1, 1));
  if (g.s == Series::SO_ODD)
    for (int i = 0; i < g.n; ++i) roots.push_back(unit(i, -1, 1, 0));
  if (g.s == Series::SP)
    for (int i = 0; i < g.n; ++i) roots.push_back(unit(i, -1, 2, 0));
  return roots;
}

inline std::vector<Weight> simple_roots(const Group& g) {
  std::vector<Weight> roots;
  for (int i = 0; i + 1 < g.n; ++i) {
    Weight w(g.n, 0);
    w[i] = 1;
    w[i + 1] = -1;
    roots.push_back(w);
  }
  Weight last(g.n, 0);
  if (g.s == Series::SO_ODD) last[g.n - 1] = 1;
  if (g.s == Series::SP) last[g.n - 1] = 2;
  if (g.s != Series::GL) roots.push_back(last);
  return roots;
}

inline Weight dominate(const Group& g, Weight w) {
  if (g.s != Series::GL)
    for (int& x : w) x = std::abs(x);
  std::sort(w.begin(), w.end(), std::greater<int>());
  return w;
}

inline long dot(const std::vector<int>& a, const std::vector<int>& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
  return s;
}

// lambda - mu in the nonnegative root cone: partial sums >= 0, with the type
// condition on the total (zero for gl, even and nonnegative for sp, only
// nonnegative for so_odd where e_n is a root).
inline bool cone_geq(const Group& g, const Weight& lambda, const Weight& mu) {
  long long run = 0;
  for (int i = 0; i < g.n; ++i) {
    run += lambda[i] - mu[i];
    if (run < 0) return false;
  }
  if (g.s == Series::GL) return run == 0;
  if (g.s == Series::SP) return run % 2 == 0;
  return true;
}

inline int sort_desc_parity(std::vector<int>& v) {
  int inv = 0;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j] > v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      ++inv;
    }
  return inv & 1;
}

}  // namespace weyldetail

// All W-orbit members of a dominant weight, without duplicates: choose how
// many copies of each distinct nonzero value flip sign (types B/C), then run
// over distinct permutations.
inline std::vector<Weight> weyl_orbit(const Group& g, const Weight& dom) {
  std::vector<Weight> out;
  std::vector<std::pair<int, int>> vals;  // value > 0 -> count
  int zeros = 0, negs = 0;
  for (int x : dom) {
    if (x == 0) { ++zeros; continue; }
    int a = std::abs(x);
    if (x < 0) ++negs;
    bool found = false;
    for (auto& [v, c] : vals)
      if (v == a) { ++c; found = true; }
    if (!found) vals.emplace_back(a, 1);
  }
  if (g.s == Series::GL || negs > 0) {
    // gl (or an already-signed gl-style vector): permutations only.
    Weight v = dom;
    std::sort(v.begin(), v.end());
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
  }
  std::vector<std::pair<int, int>> chosen;  // signed value multiset
  auto emit = [&]() {
    Weight v;
    for (auto [val, cnt] : chosen)
      for (int c = 0; c < cnt; ++c) v.push_back(val);
    v.resize(g.n, 0);
    std::sort(v.begin(), v.end());
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == vals.size()) { emit(); return; }
    auto [val, cnt] = vals[i];
    for (int neg = 0; neg <= cnt; ++neg) {
      if (cnt - neg) chosen.emplace_back(val, cnt - neg);
      if (neg) chosen.emplace_back(-val, neg);
      self(self, i + 1);
      if (neg) chosen.pop_back();
      if (cnt - neg) chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Weight multiplicities of the irreducible with highest weight hw, by
// Freudenthal's recursion over the dominant weights under hw.
inline std::map<Weight, Int> irr_character(const Group& g, const Weight& hw) {
  check_weight(g, hw);
  using namespace weyldetail;
  auto r2 = rho2(g);
  auto pos = positive_roots(g);
  auto sim = simple_roots(g);
  int lo = g.s == Series::GL ? hw.back() : -hw.front();
  int hi = hw.front();

  std::set<Weight> seen{hw};
  std::vector<Weight> queue{hw};
  for (size_t q = 0; q < queue.size(); ++q)
    for (const auto& a : sim) {
      Weight w = queue[q];
      bool ok = true;
      for (int i = 0; i < g.n; ++i) {
        w[i] -= a[i];
        if (w[i] < lo || w[i] > hi) ok = false;
      }
      if (ok && !seen.count(w)) {
        seen.insert(w);
        queue.push_back(w);
      }
    }

  std::vector<Weight> dom;
  for (const auto& w : seen) {
    bool d = true;
    for (int i = 0; i + 1 < g.n; ++i)
      if (w[i] < w[i + 1]) d = false;
    if (g.s != Series::GL && g.n > 0 && w[g.n - 1] < 0) d = false;
    if (d && cone_geq(g, hw, w)) dom.push_back(w);
  }
  auto key2 = [&](const Weight& w) {
    Weight v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = 2 * w[i] + r2[i];
    return dot(v, v);
  };
  std::sort(dom.begin(), dom.end(), [&](const Weight& a, const Weight& b) {
    long ka = key2(a), kb = key2(b);
    if (ka != kb) return ka > kb;
    return a > b;
  });

  std::map<Weight, Int> mult;  // dominant table
  long top = key2(hw);
  for (const auto& mu : dom) {
    if (mu == hw) {
      mult[mu] = 1;
      continue;
    }
    Int rhs = 0;
    for (const auto& a : pos) {
      Weight w = mu;
      for (int k = 1;; ++k) {
        bool inbox = true;
        for (int i = 0; i < g.n; ++i) {
          w[i] += a[i];
          if (w[i] < lo || w[i] > hi) inbox = false;
        }
        if (!inbox) break;
        auto it = mult.find(dominate(g, w));
        if (it != mult.end() && it->second != 0) {
          Weight v(g.n), a2(g.n);
          for (int i = 0; i < g.n; ++i) {
            v[i] = 2 * w[i];
            a2[i] = 2 * a[i];
          }
          rhs += it->second * dot(v, a2);
        }
        (void)k;
      }
    }
    long gap = top - key2(mu);
    if (rhs == 0) continue;
    Int num = 2 * rhs;
    Int m = num / gap;
    if (m * gap != num) throw std::logic_error("Freudenthal division not exact");
    if (m != 0) mult[mu] = m;
  }

  std::map<Weight, Int> full;
  for (const auto& [mu, m] : mult)
    for (const auto& w : weyl_orbit(g, mu)) full[w] = m;
  return full;
}

// Weyl dimension formula in doubled coordinates.
inline Int weyl_dim(const Group& g, const Weight& hw) {
  check_weight(g, hw);
  using namespace weyldetail;
  auto r2 = rho2(g);
  Rat d = 1;
  Weight v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = 2 * hw[i] + r2[i];
  for (const auto& a : positive_roots(g)) {
    Weight a2(g.n);
    for (int i = 0; i < g.n; ++i) a2[i] = 2 * a[i];
    d *= Rat(dot(v, a2)) / Rat(dot(r2, a2));
  }
  d.canonicalize();
  if (d.get_den() != 1) throw std::logic_error("Weyl dimension not integral");
  return d.get_num();
}

// Brauer-Klimyk: run the weights of the smaller factor over the bigger
// highest weight and reflect strictly dominant results back.
inline std::map<Weight, Int> tensor_decompose(const Group& g, const Weight& hw1, const Weight& hw2) {
  check_weight(g, hw1);
  check_weight(g, hw2);
  using namespace weyldetail;
  const Weight& small = weyl_dim(g, hw1) <= weyl_dim(g, hw2) ? hw1 : hw2;
  const Weight& big = (&small == &hw1) ? hw2 : hw1;
  auto chi = irr_character(g, small);
  auto r2 = rho2(g);
  std::map<Weight, Int> out;
  for (const auto& [w, m] : chi) {
    Weight v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = 2 * (big[i] + w[i]) + r2[i];
    int sign = 0;
    if (g.s != Series::GL) {
      for (int& x : v) {
        if (x == 0) { sign = -1; break; }
        if (x < 0) {
          x = -x;
          sign ^= 1;
        }
      }
      if (sign == -1) continue;
    }
    bool regular = true;
    int par = sort_desc_parity(v);
    for (int i = 0; i + 1 < g.n; ++i)
      if (v[i] == v[i + 1]) regular = false;
    if (!regular) continue;
    sign = (sign ^ par) ? -1 : 1;
    Weight hw(g.n);
    for (int i = 0; i < g.n; ++i) {
      int num = v[i] - r2[i];
      hw[i] = num / 2;
      if (hw[i] * 2 != num) throw std::logic_error("reflected weight not integral");
    }
    out[hw] += sign * m;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else if (it->second < 0) throw std::logic_error("negative tensor multiplicity");
    else ++it;
  }
  return out;
}

// dim Hom(V_[mu], V_nu (x) V_[lambda]) over gl_n, the finite side of the
// stable multiplicity comparisons.
inline Int hom_multiplicity(int n, const Bipartition& blam, const Bipartition& bmu, const Partition& nu) {
  Group g = make_group(Series::GL, n);
  Weight wl = bipartition_weight(blam, n);
  Weight wm = bipartition_weight(bmu, n);
  if (nu.length() > n) return 0;
  auto dec = tensor_decompose(g, partition_weight(nu, n), wl);
  auto it = dec.find(wm);
  return it == dec.end() ? Int(0) : it->second;
}

// Eigenvalues of the exchange operator on V_[bnu] (x) C^n, keyed by the
// resulting pair; c2 is the quadratic Casimir in the E_ij basis.
inline std::map<Bipartition, Rat> box_operator_eigenvalues(int n, const Bipartition& bnu) {
  Group g = make_group(Series::GL, n);
  Weight lam = bipartition_weight(bnu, n);
  auto c2 = [&](const Weight& w) {
    long s = 0;
    for (int i = 1; i <= g.n; ++i)
      s += static_cast<long>(w[i - 1]) * (w[i - 1] + g.n + 1 - 2 * i);
    return s;
  };
  std::map<Bipartition, Rat> out;
  for (int i = 0; i < n; ++i) {
    Weight mu = lam;
    ++mu[i];
    bool dom = true;
    for (int j = 0; j + 1 < n; ++j)
      if (mu[j] < mu[j + 1]) dom = false;
    if (!dom) continue;
    Rat eig = Rat(static_cast<long>(c2(mu) - c2(lam) - c2(partition_weight(Partition({1}), n))), 2);
    eig.canonicalize();
    out[weight_to_bipartition(mu)] = eig;
  }
  return out;
}

}  // namespace stabrep
