#pragma once

#include <tuple>

#include "stabrep/partition.hpp"

namespace stabrep {

// Littlewood-Richardson by depth-first search over skew tableaux: cells in
// reverse reading order (rows top to bottom, right to left within a row),
// entries weakly increasing along rows, strictly down columns, and every
// prefix of the reverse reading word a lattice word. The weight of a filling
// is then automatically a partition.
namespace lrdetail {

struct Cell {
  int row, col;
  bool has_right, has_above;
};

inline std::vector<Cell> cells_of(const SkewShape& sh) {
  std::vector<Cell> cs;
  for (int r = 1; r <= sh.outer.length(); ++r)
    for (int c = sh.outer.part(r); c > sh.inner.part(r); --c)
      cs.push_back(Cell{r, c,
                        c < sh.outer.part(r),
                        r > 1 && c > sh.inner.part(r - 1) && c <= sh.outer.part(r - 1)});
  return cs;
}

// entry_at[row] keeps the entry last placed in that row (the right neighbour
// of the next cell in the same row); above_entry looked up per column.
struct Dfs {
  const std::vector<Cell>& cs;
  const Partition* target;  // null: accumulate every weight
  std::vector<int> counts;
  std::map<std::vector<int>, int> col_entry;  // flattened (row,col) -> entry
  std::map<Partition, Int>* out;
  Int hits = 0;

  void run(size_t idx) {
    if (idx == cs.size()) {
      if (target) ++hits;
      else {
        std::vector<int> w = counts;
        while (!w.empty() && w.back() == 0) w.pop_back();
        (*out)[Partition(std::move(w))] += 1;
      }
      return;
    }
    const Cell& cell = cs[idx];
    int hi = cell.row;
    if (target && target->length() < hi) hi = target->length();
    if (cell.has_right) hi = std::min(hi, col_entry[{cell.row, cell.col + 1}]);
    int lo = 1;
    if (cell.has_above) lo = col_entry[{cell.row - 1, cell.col}] + 1;
    for (int e = lo; e <= hi; ++e) {
      if (e > 1 && counts[e - 2] <= counts[e - 1]) continue;  // lattice
      if (target && counts[e - 1] + 1 > target->part(e)) continue;
      ++counts[e - 1];
      col_entry[{cell.row, cell.col}] = e;
      run(idx + 1);
      --counts[e - 1];
    }
  }
};

}  // namespace lrdetail

// Coefficient of s_nu in s_{outer/inner}.
inline Int lr_weight_count(const SkewShape& sh, const Partition& nu) {
  if (sh.size() != nu.size()) return 0;
  using Key = std::tuple<Partition, Partition, Partition>;
  thread_local std::map<Key, Int> memo;
  Key key{sh.outer, sh.inner, nu};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto cs = lrdetail::cells_of(sh);
  lrdetail::Dfs dfs{cs, &nu, std::vector<int>(std::max(nu.length(), 1), 0), {}, nullptr};
  dfs.run(0);
  return memo[key] = dfs.hits;
}

// Full expansion of s_{outer/inner} in the Schur basis.
inline std::map<Partition, Int> skew_schur_expand(const SkewShape& sh) {
  using Key = std::pair<Partition, Partition>;
  thread_local std::map<Key, std::map<Partition, Int>> memo;
  Key key{sh.outer, sh.inner};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto cs = lrdetail::cells_of(sh);
  std::map<Partition, Int> out;
  int maxrow = sh.outer.length();
  lrdetail::Dfs dfs{cs, nullptr, std::vector<int>(std::max(maxrow, 1) + 1, 0), {}, &out};
  dfs.run(0);
  return memo[key] = out;
}

// c^lambda_{mu nu}; zero when mu is not contained in lambda or sizes do not
// match, following the series convention rather than raising.
inline Int lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (!contains(lambda, mu)) return 0;
  if (lambda.size() != mu.size() + nu.size()) return 0;
  return lr_weight_count(SkewShape(lambda, mu), nu);
}

// <s_{A/B}, s_{C/D}> under the pairing with <s_mu, s_nu> = delta.
inline Int skew_pairing(const SkewShape& a, const SkewShape& b) {
  if (a.size() != b.size()) return 0;
  auto ea = skew_schur_expand(a);
  auto eb = skew_schur_expand(b);
  Int s = 0;
  for (const auto& [p, c] : ea)
    if (auto it = eb.find(p); it != eb.end()) s += c * it->second;
  return s;
}

// The stabilization proof's skew diagram: k rows of lengths c_i stacked with
// one-column overhangs, the strip gamma/epsilon, and l columns of heights d_j,
// pairwise edge-disconnected, so its Schur expansion is the product of the
// components'. Row i of the top block ends at column gamma_1 + sum_{j>=i} c_j
// (+ l); the column block hangs below the strip on the left.
struct CompositeShape {
  SkewShape shape;
  std::vector<int> c, d;
  SkewShape strip;
};

inline CompositeShape composite_shape(const std::vector<int>& c, const std::vector<int>& d,
                                      const SkewShape& strip) {
  for (int x : c)
    if (x < 0) throw InvalidTriple("negative row length in c");
  for (int x : d)
    if (x < 0) throw InvalidTriple("negative column height in d");
  int k = static_cast<int>(c.size()), l = static_cast<int>(d.size());
  const Partition &gam = strip.outer, &eps = strip.inner;
  std::vector<long long> suffc(k + 1, 0), suffd(l + 1, 0);
  for (int i = k - 1; i >= 0; --i) suffc[i] = suffc[i + 1] + c[i];
  for (int j = l - 1; j >= 0; --j) suffd[j] = suffd[j + 1] + d[j];
  // alpha~_i = gamma_1 + sum_{j>=i} c_j, beta~_j = gamma'_1 + sum_{j'>=j} d_j'.
  std::vector<int> outer_rows, inner_rows;
  for (int i = 0; i < k; ++i) {
    outer_rows.push_back(static_cast<int>(gam.part(1) + suffc[i]) + l);
    inner_rows.push_back(static_cast<int>(gam.part(1) + suffc[i + 1]) + l);
  }
  std::vector<int> bt, bti;  // beta~ and beta~ - d as column heights
  for (int j = 0; j < l; ++j) {
    bt.push_back(static_cast<int>(gam.length() + suffd[j]));
    bti.push_back(static_cast<int>(gam.length() + suffd[j + 1]));
  }
  Partition btc = conjugate(Partition(std::move(bt)));
  Partition btic = conjugate(Partition(std::move(bti)));
  int below = std::max(l > 0 ? gam.length() + static_cast<int>(suffd[0]) : 0, gam.length());
  for (int m = 1; m <= below; ++m) {
    outer_rows.push_back(btc.part(m) + gam.part(m));
    inner_rows.push_back(btic.part(m) + eps.part(m));
  }
  SkewShape sh{Partition(std::move(outer_rows)), Partition(std::move(inner_rows))};
  return CompositeShape{std::move(sh), c, d, strip};
}

// c_nu(c, d, gamma/epsilon) of the stabilization proof.
inline Int lr_weight_count(const std::vector<int>& c, const std::vector<int>& d,
                           const SkewShape& strip, const Partition& nu) {
  return lr_weight_count(composite_shape(c, d, strip).shape, nu);
}

// s_mu * s_nu in the Schur basis, through the expansion of composite shapes:
// enumerate lambda containing mu of the right size and keep nonzero c^lambda.
inline std::map<Partition, Int> schur_product(const Partition& mu, const Partition& nu) {
  std::map<Partition, Int> out;
  // lambda/mu is a union of |nu| boxes with at most nu_1' ... bounded rows:
  // lambda_i <= mu_i + nu_1 and length <= len(mu) + len(nu).
  int maxlen = mu.length() + nu.length();
  std::vector<int> cur;
  long long want = mu.size() + nu.size();
  auto rec = [&](auto&& self, int i, long long sz) -> void {
    if (sz > want) return;
    if (i > maxlen) {
      if (sz == want) {
        Partition lam{std::vector<int>(cur)};
        Int c = lr_coefficient(lam, mu, nu);
        if (c != 0) out[lam] = c;
      }
      return;
    }
    int hi = std::min(mu.part(i) + nu.part(1), i == 1 ? INT32_MAX : cur[i - 2]);
    for (int x = mu.part(i); x <= hi; ++x) {
      cur.push_back(x);
      self(self, i + 1, sz + x);
      cur.pop_back();
    }
  };
  rec(rec, 1, 0);
  return out;
}

}  // namespace stabrep
