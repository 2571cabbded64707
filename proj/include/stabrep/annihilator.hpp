#pragma once

// Operator words in U(gl_n), U(so_2n(+1)), U(sp_2n); their action on tensor
// products of symmetric and exterior powers of V and V*; annihilator minors;
// supercommutative symbol of a minor and the nilpotency degree bounds.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabrep/common.hpp"

namespace stabrep {

enum class Algebra { GL, O, SP };

inline std::string algebra_name(Algebra a) {
  switch (a) {
    case Algebra::GL: return "gl";
    case Algebra::O: return "o";
    default: return "sp";
  }
}

// For gl the natural module V has dim n; for o/sp it has dim 2n (or 2n+1 for
// the odd orthogonal extension). Minor annihilation for o/sp is only
// guaranteed for index sets inside the isotropic range 1..n.
struct GroupSpec {
  Algebra kind = Algebra::GL;
  int n = 0;
  bool odd = false;  // O_{2n+1}

  GroupSpec() = default;
  GroupSpec(Algebra k, int rank, bool odd_orth = false) : kind(k), n(rank), odd(odd_orth) {
    if (rank < 1) throw IndexOutOfRange("group rank must be positive");
    if (odd && k != Algebra::O) throw InvalidInstance("odd dimension only for the orthogonal series");
  }
  int dimv() const { return kind == Algebra::GL ? n : 2 * n + (odd ? 1 : 0); }
  std::string str() const {
    return algebra_name(kind) + "(" + std::to_string(n) + (odd ? ",odd)" : ")");
  }
};

// Bilinear form on V preserved by o/sp: Q(v_i, v_j) = delta_{n+i,j} (indices
// mod 2n, plus Q(v_{2n+1}, v_{2n+1}) = 1 in the odd case); omega is the same
// pairing with the sign split at i <= n.
inline int form_value(const GroupSpec& g, int a, int b) {
  int n = g.n;
  if (g.kind == Algebra::O) {
    int d = g.dimv();
    if (g.odd && (a == d || b == d)) return (a == d && b == d) ? 1 : 0;
    return (b == (a <= n ? a + n : a - n)) ? 1 : 0;
  }
  if (g.kind == Algebra::SP) {
    if (a <= n) return b == a + n ? 1 : 0;
    return b == a - n ? -1 : 0;
  }
  throw InvalidInstance("no invariant form on the gl module");
}

inline int form_epsilon(Algebra k) { return k == Algebra::SP ? 1 : -1; }

// ----- operator expressions -----

// A word is a product of generators, leftmost factor acting last. Letters are
// E_ij for gl and a_ij = v_i (x) v_j + eps v_j (x) v_i for o/sp; the o/sp
// letters are normalized to i <= j via a_ji = eps a_ij.
using OpLetter = std::pair<int, int>;
using OpWord = std::vector<OpLetter>;

struct OperatorExpr {
  Algebra kind = Algebra::GL;
  std::map<OpWord, Rat> terms;

  OperatorExpr() = default;
  explicit OperatorExpr(Algebra k) : kind(k) {}

  void add(const OpWord& w, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  OperatorExpr& operator+=(const OperatorExpr& o) {
    if (kind != o.kind) throw DimensionMismatch("cannot add operators over different algebras");
    for (auto& [w, c] : o.terms) add(w, c);
    return *this;
  }
  OperatorExpr operator+(const OperatorExpr& o) const {
    OperatorExpr r = *this;
    r += o;
    return r;
  }
  OperatorExpr scaled(const Rat& s) const {
    OperatorExpr r(kind);
    if (s == 0) return r;
    for (auto& [w, c] : terms) r.terms.emplace(w, c * s);
    return r;
  }
  OperatorExpr operator*(const OperatorExpr& o) const {
    if (kind != o.kind) throw DimensionMismatch("cannot multiply operators over different algebras");
    OperatorExpr r(kind);
    for (auto& [w1, c1] : terms)
      for (auto& [w2, c2] : o.terms) {
        OpWord w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        r.add(w, c1 * c2);
      }
    return r;
  }
  bool is_zero() const { return terms.empty(); }
};

inline OperatorExpr algebra_generator(Algebra k, int i, int j) {
  if (i < 1 || j < 1) throw IndexOutOfRange("generator index must be positive");
  OperatorExpr e(k);
  if (k == Algebra::GL) {
    e.add({{i, j}}, 1);
    return e;
  }
  Rat c = 1;
  if (i > j) {
    std::swap(i, j);
    c = form_epsilon(k);
  }
  if (i == j && k == Algebra::O) return e;  // a_ii = 0 in the orthogonal case
  e.add({{i, j}}, c);
  return e;
}

// ----- modules: tensor products of S^m / Lambda^m of V and V* -----

struct ModuleFactor {
  enum class Kind { SymV, SymVdual, AltV, AltVdual } kind;
  int power;
};

using ModBasis = std::vector<std::vector<int>>;  // one sorted index list per factor
using ModVector = std::map<ModBasis, Rat>;

struct ModuleSpace {
  GroupSpec group;
  std::vector<ModuleFactor> factors;

  ModuleSpace() = default;
  ModuleSpace(GroupSpec g, std::vector<ModuleFactor> fs) : group(g), factors(std::move(fs)) {
    for (auto& f : factors)
      if (f.power < 0) throw InvalidInstance("negative tensor factor power");
  }

  std::vector<ModBasis> basis() const {
    std::vector<ModBasis> out{{}};
    for (auto& f : factors) {
      bool strict = f.kind == ModuleFactor::Kind::AltV || f.kind == ModuleFactor::Kind::AltVdual;
      std::vector<std::vector<int>> lists;
      std::vector<int> cur;
      int d = group.dimv();
      auto rec = [&](auto&& self, int lo) -> void {
        if ((int)cur.size() == f.power) {
          lists.push_back(cur);
          return;
        }
        for (int v = lo; v <= d; ++v) {
          cur.push_back(v);
          self(self, strict ? v + 1 : v);
          cur.pop_back();
        }
      };
      rec(rec, 1);
      std::vector<ModBasis> next;
      next.reserve(out.size() * lists.size());
      for (auto& b : out)
        for (auto& l : lists) {
          ModBasis nb = b;
          nb.push_back(l);
          next.push_back(std::move(nb));
        }
      out = std::move(next);
    }
    return out;
  }
};

namespace anndetail {

// M[i][j] = coefficient of v_{i+1} in (letter) v_{j+1}
inline std::vector<std::vector<int>> letter_matrix(const GroupSpec& g, OpLetter L) {
  int d = g.dimv();
  auto [i, j] = L;
  if (i < 1 || j < 1 || i > d || j > d)
    throw DimensionMismatch("generator index exceeds the module dimension");
  std::vector<std::vector<int>> M(d, std::vector<int>(d, 0));
  if (g.kind == Algebra::GL) {
    M[i - 1][j - 1] = 1;
    return M;
  }
  int eps = form_epsilon(g.kind);
  for (int b = 1; b <= d; ++b) {
    int qa = form_value(g, j, b);
    if (qa != 0) M[i - 1][b - 1] += qa;
    int qb = form_value(g, i, b);
    if (qb != 0) M[j - 1][b - 1] += eps * qb;
  }
  return M;
}

inline void add_term(ModVector& out, const ModBasis& b, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = out.emplace(b, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// action of one letter as a derivation across all tensor factors
inline ModVector apply_letter(const ModuleSpace& sp, const std::vector<std::vector<int>>& M,
                              const ModVector& v) {
  ModVector out;
  int d = sp.group.dimv();
  for (auto& [mb, coef] : v) {
    for (size_t fi = 0; fi < sp.factors.size(); ++fi) {
      auto kind = sp.factors[fi].kind;
      const std::vector<int>& mono = mb[fi];
      bool dual = kind == ModuleFactor::Kind::SymVdual || kind == ModuleFactor::Kind::AltVdual;
      bool alt = kind == ModuleFactor::Kind::AltV || kind == ModuleFactor::Kind::AltVdual;
      if (!alt) {
        // symmetric: replace one copy of each distinct index
        for (size_t p = 0; p < mono.size(); ++p) {
          if (p > 0 && mono[p] == mono[p - 1]) continue;
          int u = mono[p];
          int mult = 0;
          for (int w : mono)
            if (w == u) ++mult;
          for (int r = 1; r <= d; ++r) {
            int a = dual ? -M[u - 1][r - 1] : M[r - 1][u - 1];
            if (a == 0) continue;
            ModBasis nb = mb;
            nb[fi][p] = r;
            std::sort(nb[fi].begin(), nb[fi].end());
            add_term(out, nb, coef * mult * a);
          }
        }
      } else {
        // exterior: strict lists with a sign for re-sorting
        for (size_t p = 0; p < mono.size(); ++p) {
          int u = mono[p];
          for (int r = 1; r <= d; ++r) {
            int a = dual ? -M[u - 1][r - 1] : M[r - 1][u - 1];
            if (a == 0) continue;
            if (r != u && std::find(mono.begin(), mono.end(), r) != mono.end()) continue;
            std::vector<int> rest;
            rest.reserve(mono.size());
            for (size_t q = 0; q < mono.size(); ++q)
              if (q != p) rest.push_back(mono[q]);
            size_t t = 0;
            while (t < rest.size() && rest[t] < r) ++t;
            int shift = (int)t - (int)p;
            rest.insert(rest.begin() + t, r);
            ModBasis nb = mb;
            nb[fi] = rest;
            add_term(out, nb, coef * a * (std::abs(shift) % 2 == 0 ? 1 : -1));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace anndetail

inline ModVector apply(const OperatorExpr& op, const ModuleSpace& sp, const ModVector& v) {
  if (op.kind != sp.group.kind)
    throw DimensionMismatch("operator algebra " + algebra_name(op.kind) +
                            " does not match module group " + sp.group.str());
  std::map<OpLetter, std::vector<std::vector<int>>> cache;
  ModVector out;
  for (auto& [word, coef] : op.terms) {
    ModVector cur = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      auto mit = cache.find(*it);
      if (mit == cache.end()) mit = cache.emplace(*it, anndetail::letter_matrix(sp.group, *it)).first;
      cur = anndetail::apply_letter(sp, mit->second, cur);
      if (cur.empty()) break;
    }
    for (auto& [b, c] : cur) anndetail::add_term(out, b, coef * c);
  }
  return out;
}

inline std::optional<ModBasis> annihilation_witness(const OperatorExpr& op, const ModuleSpace& sp) {
  for (auto& b : sp.basis()) {
    ModVector v{{b, Rat(1)}};
    if (!apply(op, sp, v).empty()) return b;
  }
  return std::nullopt;
}

inline bool check_annihilates(const OperatorExpr& op, const ModuleSpace& sp) {
  return !annihilation_witness(op, sp).has_value();
}

// ----- the two elementary annihilators -----

enum class ElemVariant { SymV, SymVdual };

// SymV:     E_ij E_kl + d_kl E_ij - E_il E_kj - d_kj E_il  kills S^m V
// SymVdual: E_ij E_kl - d_ij E_kl - E_il E_kj + d_il E_kj  kills S^m V*
inline OperatorExpr elementary_annihilator(int i, int j, int k, int l, ElemVariant var) {
  if (i < 1 || j < 1 || k < 1 || l < 1) throw IndexOutOfRange("generator index must be positive");
  OperatorExpr e(Algebra::GL);
  e.add({{i, j}, {k, l}}, 1);
  e.add({{i, l}, {k, j}}, -1);
  if (var == ElemVariant::SymV) {
    if (k == l) e.add({{i, j}}, 1);
    if (k == j) e.add({{i, l}}, -1);
  } else {
    if (i == j) e.add({{k, l}}, -1);
    if (i == l) e.add({{k, j}}, 1);
  }
  return e;
}

// ----- minors -----

// Determinant of the submatrix with rows I, columns J of (E_ij) or (a_ij),
// expanded in row order. I and J must be disjoint: for gl this makes all
// entries commute; for o/sp the entries commute when I,J lie in 1..n, the
// only case in which annihilation is asserted.
inline OperatorExpr minor(const std::vector<int>& I, const std::vector<int>& J,
                          const GroupSpec& g) {
  if (I.size() != J.size()) throw DimensionMismatch("minor needs |I| = |J|");
  if (I.empty()) throw InvalidInstance("empty minor");
  int d = g.dimv();
  for (int x : I)
    if (x < 1 || x > d) throw IndexOutOfRange("row index " + std::to_string(x) + " outside 1.." + std::to_string(d));
  for (int x : J)
    if (x < 1 || x > d) throw IndexOutOfRange("column index " + std::to_string(x) + " outside 1.." + std::to_string(d));
  for (int x : I)
    for (int y : J)
      if (x == y) throw OverlappingIndexSets("index " + std::to_string(x) + " appears in both I and J");
  size_t p = I.size();
  std::vector<size_t> perm(p);
  for (size_t s = 0; s < p; ++s) perm[s] = s;
  OperatorExpr det(g.kind);
  do {
    int inv = 0;
    for (size_t s = 0; s < p; ++s)
      for (size_t t = s + 1; t < p; ++t)
        if (perm[s] > perm[t]) ++inv;
    OperatorExpr prod = algebra_generator(g.kind, I[0], J[perm[0]]);
    for (size_t s = 1; s < p; ++s) prod = prod * algebra_generator(g.kind, I[s], J[perm[s]]);
    det += prod.scaled(inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// ----- degree bounds -----

// Filtration degree in which Ann(R_k) is first detected. For o/sp the value
// (2d+1)(d(2d+1)+1) is sometimes quoted, but the counting argument
// (deg A_{I,J} = 2d+1, power 2d(2d+1)+1) gives the same bound as the gl
// case; "stated" records the smaller quoted value when it differs.
struct DegreeBound {
  long long value;
  std::optional<long long> stated;
};

inline DegreeBound degree_bound(int k, Algebra family) {
  if (k < 1) throw IndexOutOfRange("degree bound needs k >= 1");
  long long kk = k;
  long long v = (2 * kk + 1) * (2 * kk * (2 * kk + 1) + 1);
  if (family == Algebra::GL) return {v, std::nullopt};
  return {v, (2 * kk + 1) * (kk * (2 * kk + 1) + 1)};
}

// ----- supercommutative polynomials -----

// kind: 0 = x, 1 = y (even), 2 = xi, 3 = eta (odd)
struct SVar {
  int kind;
  int index;
  int slot;
  friend bool operator<(const SVar& a, const SVar& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.index != b.index) return a.index < b.index;
    return a.slot < b.slot;
  }
  friend bool operator==(const SVar& a, const SVar& b) {
    return a.kind == b.kind && a.index == b.index && a.slot == b.slot;
  }
  bool is_odd() const { return kind >= 2; }
  std::string str() const {
    static const char* names[] = {"x", "y", "xi", "eta"};
    return std::string(names[kind]) + "_" + std::to_string(index) + "," + std::to_string(slot);
  }
};

struct SMono {
  std::map<SVar, int> even;
  std::vector<SVar> odd;  // strictly increasing
  friend bool operator<(const SMono& a, const SMono& b) {
    if (a.odd != b.odd) return a.odd < b.odd;
    return a.even < b.even;
  }
  friend bool operator==(const SMono& a, const SMono& b) {
    return a.even == b.even && a.odd == b.odd;
  }
};

struct SuperPoly {
  std::map<SMono, Rat> terms;

  static SuperPoly zero() { return {}; }
  static SuperPoly one() {
    SuperPoly p;
    p.terms.emplace(SMono{}, Rat(1));
    return p;
  }
  static SuperPoly var(const SVar& v) {
    SuperPoly p;
    SMono m;
    if (v.is_odd())
      m.odd.push_back(v);
    else
      m.even[v] = 1;
    p.terms.emplace(m, Rat(1));
    return p;
  }
  bool is_zero() const { return terms.empty(); }
  void add(const SMono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  SuperPoly& operator+=(const SuperPoly& o) {
    for (auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  SuperPoly operator+(const SuperPoly& o) const {
    SuperPoly r = *this;
    r += o;
    return r;
  }
  SuperPoly scaled(const Rat& s) const {
    SuperPoly r;
    if (s == 0) return r;
    for (auto& [m, c] : terms) r.terms.emplace(m, c * s);
    return r;
  }
  SuperPoly operator*(const SuperPoly& o) const {
    SuperPoly r;
    for (auto& [m1, c1] : terms)
      for (auto& [m2, c2] : o.terms) {
        // merge odd parts counting inversions; a repeated odd variable kills the term
        std::vector<SVar> odd;
        odd.reserve(m1.odd.size() + m2.odd.size());
        size_t a = 0, b = 0;
        long swaps = 0;
        bool dead = false;
        while (a < m1.odd.size() || b < m2.odd.size()) {
          if (b == m2.odd.size() || (a < m1.odd.size() && m1.odd[a] < m2.odd[b])) {
            odd.push_back(m1.odd[a++]);
          } else if (a < m1.odd.size() && m1.odd[a] == m2.odd[b]) {
            dead = true;
            break;
          } else {
            swaps += (long)(m1.odd.size() - a);
            odd.push_back(m2.odd[b++]);
          }
        }
        if (dead) continue;
        SMono m;
        m.odd = std::move(odd);
        m.even = m1.even;
        for (auto& [v, e] : m2.even) m.even[v] += e;
        r.add(m, swaps % 2 == 0 ? Rat(c1 * c2) : Rat(-c1 * c2));
      }
    return r;
  }
};

// ----- symbols of minors -----

// gl: phi(E_ij) = sum_{a<=k} (x_ia y_ja + xi_ia eta_ja)
//               - sum_{b=k+1..2k} (x_jb y_ib + xi_jb eta_ib)
// o/sp: phi(a_ij) = sum_{a<=k} (x_ia y_ja + eps x_ja y_ia + xi_ia eta_ja + eps xi_ja eta_ia)
inline SuperPoly symbol_of_generator(int i, int j, int k, Algebra family) {
  SuperPoly p;
  if (family == Algebra::GL) {
    for (int a = 1; a <= k; ++a) {
      p += SuperPoly::var({0, i, a}) * SuperPoly::var({1, j, a});
      p += SuperPoly::var({2, i, a}) * SuperPoly::var({3, j, a});
    }
    for (int b = k + 1; b <= 2 * k; ++b) {
      p += (SuperPoly::var({0, j, b}) * SuperPoly::var({1, i, b})).scaled(-1);
      p += (SuperPoly::var({2, j, b}) * SuperPoly::var({3, i, b})).scaled(-1);
    }
    return p;
  }
  int eps = form_epsilon(family);
  for (int a = 1; a <= k; ++a) {
    p += SuperPoly::var({0, i, a}) * SuperPoly::var({1, j, a});
    p += (SuperPoly::var({0, j, a}) * SuperPoly::var({1, i, a})).scaled(eps);
    p += SuperPoly::var({2, i, a}) * SuperPoly::var({3, j, a});
    p += (SuperPoly::var({2, j, a}) * SuperPoly::var({3, i, a})).scaled(eps);
  }
  return p;
}

inline SuperPoly super_symbol(const std::vector<int>& I, const std::vector<int>& J, int k,
                              Algebra family) {
  if (k < 1) throw IndexOutOfRange("symbol needs k >= 1");
  if ((int)I.size() != 2 * k + 1 || (int)J.size() != 2 * k + 1)
    throw DimensionMismatch("symbol needs |I| = |J| = 2k+1");
  for (int x : I)
    for (int y : J)
      if (x == y) throw OverlappingIndexSets("index " + std::to_string(x) + " appears in both I and J");
  size_t p = I.size();
  std::vector<size_t> perm(p);
  for (size_t s = 0; s < p; ++s) perm[s] = s;
  SuperPoly det;
  do {
    int inv = 0;
    for (size_t s = 0; s < p; ++s)
      for (size_t t = s + 1; t < p; ++t)
        if (perm[s] > perm[t]) ++inv;
    SuperPoly prod = symbol_of_generator(I[0], J[perm[0]], k, family);
    for (size_t s = 1; s < p; ++s)
      prod = prod * symbol_of_generator(I[s], J[perm[s]], k, family);
    det += prod.scaled(inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Every monomial must contain an odd variable (the even part of the symbol
// cancels because the minor kills the symmetric algebra) and equally many
// xi's and eta's (true for each phi(generator), hence for products).
inline bool nilradical_check(const SuperPoly& p) {
  for (auto& [m, c] : p.terms) {
    (void)c;
    if (m.odd.empty()) return false;
    int xi = 0, eta = 0;
    for (auto& v : m.odd) (v.kind == 2 ? xi : eta)++;
    if (xi != eta) return false;
  }
  return true;
}

// The given power vanishes whenever each monomial holds at least one xi and
// fewer than `power` distinct xi variables occur in the whole polynomial: a
// nonzero product of `power` factors would need that many distinct xi's.
// When the counting argument does not apply, fall back to direct expansion.
inline bool power_vanishes(const SuperPoly& p, int power) {
  if (power < 1) throw IndexOutOfRange("power must be positive");
  bool counting = true;
  std::vector<SVar> universe;
  for (auto& [m, c] : p.terms) {
    (void)c;
    int xi = 0;
    for (auto& v : m.odd)
      if (v.kind == 2) {
        ++xi;
        universe.push_back(v);
      }
    if (xi == 0) counting = false;
  }
  if (counting) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if ((int)universe.size() < power) return true;
  }
  SuperPoly acc = SuperPoly::one();
  for (int s = 0; s < power; ++s) {
    acc = acc * p;
    if (acc.is_zero()) return true;
  }
  return acc.is_zero();
}

}  // namespace stabrep
