#pragma once

// The sl_Z box operators e_c, f_c on C^Z, its wedge powers, the Fock space,
// their dual/index-negation twists and tensor products, plus the
// Grothendieck-group action on the D_mu bases and the isomorphism onto the
// tensor-product model.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabrep/charsum.hpp"

namespace stabrep {

// ----- generalized box operations on nonincreasing integer sequences -----
// A sequence of fixed length k is a gl_k dominant weight; adding a cell of
// content c (col - row) raises the entry at row s with seq_s + 1 - s = c.

inline std::optional<std::vector<int>> seq_add_box(const std::vector<int>& seq, int c) {
  for (size_t s = 0; s < seq.size(); ++s) {
    if (seq[s] + 1 - (int)(s + 1) != c) continue;
    if (s > 0 && seq[s - 1] == seq[s]) return std::nullopt;
    std::vector<int> r = seq;
    r[s] += 1;
    return r;
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> seq_remove_box(const std::vector<int>& seq, int c) {
  for (size_t s = 0; s < seq.size(); ++s) {
    if (seq[s] - (int)(s + 1) != c) continue;
    if (s + 1 < seq.size() && seq[s] == seq[s + 1]) return std::nullopt;
    std::vector<int> r = seq;
    r[s] -= 1;
    return r;
  }
  return std::nullopt;
}

// ----- family data for the D_mu Grothendieck bases -----

struct SlzBlock {
  std::string name;        // transcendental generator label (A_j, B_j, ...)
  std::vector<int> alpha;  // nonincreasing, last entry 0; its length is the block size
};

struct FamilySpec {
  std::vector<SlzBlock> A, B, Abar, Bbar;
  Partition gamma, gammabar;

  static int total(const std::vector<SlzBlock>& v) {
    int s = 0;
    for (auto& b : v) s += (int)b.alpha.size();
    return s;
  }
  int K() const { return total(A); }
  int L() const { return total(B); }
  int Kbar() const { return total(Abar); }
  int Lbar() const { return total(Bbar); }

  void validate() const {
    std::vector<std::string> names;
    for (auto* side : {&A, &B, &Abar, &Bbar})
      for (auto& b : *side) {
        if (b.name.empty() || b.name == "t")
          throw InvalidInstance("block generator name must be nonempty and distinct from t");
        names.push_back(b.name);
        if (b.alpha.empty()) throw InvalidInstance("block " + b.name + " has empty sequence");
        if (b.alpha.back() != 0)
          throw InvalidInstance("block " + b.name + " sequence must end in 0");
        for (size_t s = 1; s < b.alpha.size(); ++s)
          if (b.alpha[s - 1] < b.alpha[s])
            throw InvalidInstance("block " + b.name + " sequence must be nonincreasing");
      }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      throw InvalidInstance("block generator names must be pairwise distinct");
  }
};

// Basis label of Gr(D_mu): the lambda-side data. Block entries store the
// composed sequences (family base plus offset), so the family's alpha[j] is
// the base point; delta/deltabar are the finite tails.
struct TupleIndex {
  std::vector<std::vector<int>> a, b, abar, bbar;
  Partition delta, deltabar;

  friend bool operator==(const TupleIndex& x, const TupleIndex& y) {
    return x.a == y.a && x.b == y.b && x.abar == y.abar && x.bbar == y.bbar &&
           x.delta == y.delta && x.deltabar == y.deltabar;
  }
  friend bool operator<(const TupleIndex& x, const TupleIndex& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.abar != y.abar) return x.abar < y.abar;
    if (x.bbar != y.bbar) return x.bbar < y.bbar;
    if (x.delta != y.delta) return x.delta < y.delta;
    return x.deltabar < y.deltabar;
  }
};

inline void validate_tuple(const FamilySpec& f, const TupleIndex& t) {
  auto side = [&](const std::vector<SlzBlock>& blocks, const std::vector<std::vector<int>>& seqs,
                  const char* which) {
    if (blocks.size() != seqs.size())
      throw InvalidInstance(std::string("tuple has wrong number of ") + which + " blocks");
    for (size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j].alpha.size() != seqs[j].size())
        throw InvalidInstance("tuple block " + blocks[j].name + " has wrong length");
      for (size_t s = 1; s < seqs[j].size(); ++s)
        if (seqs[j][s - 1] < seqs[j][s])
          throw InvalidInstance("tuple block " + blocks[j].name + " is not nonincreasing");
    }
  };
  side(f.A, t.a, "A");
  side(f.B, t.b, "B");
  side(f.Abar, t.abar, "Abar");
  side(f.Bbar, t.bbar, "Bbar");
}

inline TupleIndex base_tuple(const FamilySpec& f) {
  TupleIndex t;
  for (auto& b : f.A) t.a.push_back(b.alpha);
  for (auto& b : f.B) t.b.push_back(b.alpha);
  for (auto& b : f.Abar) t.abar.push_back(b.alpha);
  for (auto& b : f.Bbar) t.bbar.push_back(b.alpha);
  t.delta = f.gamma;
  t.deltabar = f.gammabar;
  return t;
}

// ----- module specifications and basis indices -----

enum class Twist { Dual, Tau };

struct ModuleSpec {
  enum class Kind { CZ, Wedge, Fock, GrDMu, Tensor };
  Kind kind = Kind::CZ;
  int n = 0;  // wedge size
  std::vector<Twist> twists;
  std::vector<ModuleSpec> factors;
  FamilySpec fam;

  static ModuleSpec cz() { return {}; }
  static ModuleSpec wedge(int n) {
    if (n < 1) throw InvalidInstance("wedge power must be positive");
    ModuleSpec m;
    m.kind = Kind::Wedge;
    m.n = n;
    return m;
  }
  static ModuleSpec fock() {
    ModuleSpec m;
    m.kind = Kind::Fock;
    return m;
  }
  static ModuleSpec grdmu(FamilySpec f) {
    f.validate();
    ModuleSpec m;
    m.kind = Kind::GrDMu;
    m.fam = std::move(f);
    return m;
  }
  static ModuleSpec tensor(std::vector<ModuleSpec> fs) {
    ModuleSpec m;
    m.kind = Kind::Tensor;
    m.factors = std::move(fs);
    return m;
  }
  ModuleSpec twisted(Twist t) const {
    ModuleSpec m = *this;
    m.twists.push_back(t);
    return m;
  }
};

struct BasisIndex {
  enum class Kind { Int, Wedge, Fock, Tuple, Tensor };
  Kind kind = Kind::Int;
  int c = 0;
  std::vector<int> seq;  // strictly decreasing wedge entries
  Partition part;
  TupleIndex tup;
  std::vector<BasisIndex> factors;

  static BasisIndex integer(int v) {
    BasisIndex b;
    b.kind = Kind::Int;
    b.c = v;
    return b;
  }
  static BasisIndex wedge(std::vector<int> w) {
    for (size_t s = 1; s < w.size(); ++s)
      if (w[s - 1] <= w[s]) throw InvalidInstance("wedge entries must be strictly decreasing");
    BasisIndex b;
    b.kind = Kind::Wedge;
    b.seq = std::move(w);
    return b;
  }
  static BasisIndex fock(Partition p) {
    BasisIndex b;
    b.kind = Kind::Fock;
    b.part = std::move(p);
    return b;
  }
  static BasisIndex tuple(TupleIndex t) {
    BasisIndex b;
    b.kind = Kind::Tuple;
    b.tup = std::move(t);
    return b;
  }
  static BasisIndex tensor(std::vector<BasisIndex> fs) {
    BasisIndex b;
    b.kind = Kind::Tensor;
    b.factors = std::move(fs);
    return b;
  }

  friend bool operator==(const BasisIndex& x, const BasisIndex& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Kind::Int: return x.c == y.c;
      case Kind::Wedge: return x.seq == y.seq;
      case Kind::Fock: return x.part == y.part;
      case Kind::Tuple: return x.tup == y.tup;
      case Kind::Tensor: return x.factors == y.factors;
    }
    return false;
  }
  friend bool operator<(const BasisIndex& x, const BasisIndex& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    switch (x.kind) {
      case Kind::Int: return x.c < y.c;
      case Kind::Wedge: return x.seq < y.seq;
      case Kind::Fock: return x.part < y.part;
      case Kind::Tuple: return x.tup < y.tup;
      case Kind::Tensor: return x.factors < y.factors;
    }
    return false;
  }
};

using Svec = std::map<BasisIndex, Rat>;

inline void sv_add(Svec& v, const BasisIndex& b, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(b, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline Svec sv_sub(const Svec& x, const Svec& y) {
  Svec r = x;
  for (auto& [b, c] : y) sv_add(r, b, -c);
  return r;
}

// ----- the basic operators -----

namespace slzdetail {

struct Resolved {
  bool to_e;  // odd number of Dual twists
  bool neg;   // odd number of Tau twists
};

inline Resolved resolve(const std::vector<Twist>& ts) {
  Resolved r{false, false};
  for (auto t : ts) (t == Twist::Dual ? r.to_e : r.neg) ^= true;
  return r;
}

// op on the untwisted module: is_f selects f_c vs e_c
inline Svec apply_base(const ModuleSpec& spec, bool is_f, int c, const BasisIndex& b) {
  Svec out;
  switch (spec.kind) {
    case ModuleSpec::Kind::CZ: {
      if (b.kind != BasisIndex::Kind::Int)
        throw DimensionMismatch("C^Z expects integer basis indices");
      if (is_f) {
        if (b.c == c) sv_add(out, BasisIndex::integer(c + 1), 1);
      } else {
        if (b.c == c + 1) sv_add(out, BasisIndex::integer(c), 1);
      }
      return out;
    }
    case ModuleSpec::Kind::Wedge: {
      if (b.kind != BasisIndex::Kind::Wedge || (int)b.seq.size() != spec.n)
        throw DimensionMismatch("wedge basis index of wrong shape");
      int from = is_f ? c : c + 1;
      int to = is_f ? c + 1 : c;
      for (size_t s = 0; s < b.seq.size(); ++s) {
        if (b.seq[s] != from) continue;
        if (std::find(b.seq.begin(), b.seq.end(), to) != b.seq.end()) return out;
        std::vector<int> w = b.seq;
        w[s] = to;
        std::sort(w.begin(), w.end(), std::greater<int>());
        sv_add(out, BasisIndex::wedge(w), 1);
        return out;
      }
      return out;
    }
    case ModuleSpec::Kind::Fock: {
      if (b.kind != BasisIndex::Kind::Fock)
        throw DimensionMismatch("Fock expects partition basis indices");
      auto img = is_f ? add_box_by_content(b.part, c) : remove_box_by_content(b.part, c);
      if (img) sv_add(out, BasisIndex::fock(*img), 1);
      return out;
    }
    default:
      throw DimensionMismatch("apply_base on composite module");
  }
}

inline Svec apply_op(const ModuleSpec& spec, bool is_f, int c, const Svec& v);

inline Svec apply_op_basis(const ModuleSpec& spec, bool is_f, int c, const BasisIndex& b) {
  auto r = resolve(spec.twists);
  bool eff_f = is_f ^ r.to_e;
  int cc = r.neg ? -c : c;
  switch (spec.kind) {
    case ModuleSpec::Kind::CZ:
    case ModuleSpec::Kind::Wedge:
    case ModuleSpec::Kind::Fock:
      return apply_base(spec, eff_f, cc, b);
    case ModuleSpec::Kind::Tensor: {
      if (b.kind != BasisIndex::Kind::Tensor || b.factors.size() != spec.factors.size())
        throw DimensionMismatch("tensor basis index of wrong shape");
      Svec out;
      for (size_t fi = 0; fi < spec.factors.size(); ++fi) {
        Svec comp = apply_op_basis(spec.factors[fi], eff_f, cc, b.factors[fi]);
        for (auto& [nb, coef] : comp) {
          BasisIndex t = b;
          t.factors[fi] = nb;
          sv_add(out, t, coef);
        }
      }
      return out;
    }
    case ModuleSpec::Kind::GrDMu:
      throw InactiveIndex(
          "integer-indexed operators on a Grothendieck D_mu module need a coset; use "
          "grothendieck_f/grothendieck_e");
  }
  return {};
}

inline Svec apply_op(const ModuleSpec& spec, bool is_f, int c, const Svec& v) {
  Svec out;
  for (auto& [b, coef] : v) {
    Svec img = apply_op_basis(spec, is_f, c, b);
    for (auto& [nb, cc] : img) sv_add(out, nb, coef * cc);
  }
  return out;
}

}  // namespace slzdetail

inline Svec apply_f(const ModuleSpec& spec, int c, const Svec& v) {
  return slzdetail::apply_op(spec, true, c, v);
}
inline Svec apply_e(const ModuleSpec& spec, int c, const Svec& v) {
  return slzdetail::apply_op(spec, false, c, v);
}

// apply f_c / e_c to one tensor factor only (the coset-local operator)
inline Svec apply_f_at(const ModuleSpec& spec, size_t pos, int c, const Svec& v) {
  if (spec.kind != ModuleSpec::Kind::Tensor || pos >= spec.factors.size())
    throw DimensionMismatch("apply_f_at needs a tensor module and a valid factor position");
  auto r = slzdetail::resolve(spec.twists);
  Svec out;
  for (auto& [b, coef] : v) {
    if (b.kind != BasisIndex::Kind::Tensor || b.factors.size() != spec.factors.size())
      throw DimensionMismatch("tensor basis index of wrong shape");
    Svec comp = slzdetail::apply_op_basis(spec.factors[pos], !r.to_e, r.neg ? -c : c, b.factors[pos]);
    for (auto& [nb, cc] : comp) {
      BasisIndex t = b;
      t.factors[pos] = nb;
      sv_add(out, t, coef * cc);
    }
  }
  return out;
}
inline Svec apply_e_at(const ModuleSpec& spec, size_t pos, int c, const Svec& v) {
  if (spec.kind != ModuleSpec::Kind::Tensor || pos >= spec.factors.size())
    throw DimensionMismatch("apply_e_at needs a tensor module and a valid factor position");
  auto r = slzdetail::resolve(spec.twists);
  Svec out;
  for (auto& [b, coef] : v) {
    if (b.kind != BasisIndex::Kind::Tensor || b.factors.size() != spec.factors.size())
      throw DimensionMismatch("tensor basis index of wrong shape");
    Svec comp = slzdetail::apply_op_basis(spec.factors[pos], r.to_e, r.neg ? -c : c, b.factors[pos]);
    for (auto& [nb, cc] : comp) {
      BasisIndex t = b;
      t.factors[pos] = nb;
      sv_add(out, t, coef * cc);
    }
  }
  return out;
}

// ----- active cosets and the Grothendieck-level action -----

struct CosetDesc {
  enum class Family { A, B, Gamma, Abar, Bbar, GammaBar } family;
  int block;  // position within its block list, -1 for the two Fock cosets
  AffineExponent coset;
};

inline std::vector<CosetDesc> coset_table(const FamilySpec& f) {
  f.validate();
  std::vector<CosetDesc> out;
  int K = f.K(), L = f.L(), Kb = f.Kbar(), Lb = f.Lbar();
  int acc = 0;
  for (size_t j = 0; j < f.A.size(); ++j) {
    out.push_back({CosetDesc::Family::A, (int)j,
                   AffineExponent::gen(f.A[j].name) + Rat(L - acc)});
    acc += (int)f.A[j].alpha.size();
  }
  acc = 0;
  for (size_t j = 0; j < f.B.size(); ++j) {
    out.push_back({CosetDesc::Family::B, (int)j,
                   -AffineExponent::gen(f.B[j].name) + Rat(-K + acc)});
    acc += (int)f.B[j].alpha.size();
  }
  out.push_back({CosetDesc::Family::Gamma, -1, AffineExponent(Rat(K - L))});
  acc = 0;
  for (size_t j = 0; j < f.Abar.size(); ++j) {
    out.push_back({CosetDesc::Family::Abar, (int)j,
                   -AffineExponent::gen(f.Abar[j].name) - AffineExponent::gen("t") + Rat(-Lb + acc)});
    acc += (int)f.Abar[j].alpha.size();
  }
  acc = 0;
  for (size_t j = 0; j < f.Bbar.size(); ++j) {
    out.push_back({CosetDesc::Family::Bbar, (int)j,
                   AffineExponent::gen(f.Bbar[j].name) - AffineExponent::gen("t") + Rat(Kb - acc)});
    acc += (int)f.Bbar[j].alpha.size();
  }
  out.push_back({CosetDesc::Family::GammaBar, -1, -AffineExponent::gen("t") + Rat(Kb - Lb)});
  return out;
}

inline std::vector<AffineExponent> active_cosets(const FamilySpec& f) {
  std::vector<AffineExponent> out;
  for (auto& d : coset_table(f)) out.push_back(d.coset);
  return out;
}

namespace slzdetail {

// same Z-coset: identical generator coefficients, integer constant difference
inline std::optional<int> coset_offset(const AffineExponent& x, const AffineExponent& r) {
  if (x.coef != r.coef) return std::nullopt;
  Rat d = x.c0 - r.c0;
  if (!is_integer(d)) return std::nullopt;
  mpz_class z = d.get_num();
  if (!z.fits_sint_p()) throw InvalidInstance("coset offset out of range");
  return (int)z.get_si();
}

inline Svec grothendieck_apply(const FamilySpec& f, const AffineExponent& coset, int m,
                               const Svec& v, bool is_f) {
  auto table = coset_table(f);
  const CosetDesc* hit = nullptr;
  int shift = 0;
  for (auto& d : table)
    if (auto off = coset_offset(coset, d.coset)) {
      hit = &d;
      shift = *off;
      break;
    }
  if (!hit) throw InactiveCoset("coset " + coset.str() + " is not active for this family");
  int mm = m + shift;  // integer index relative to the canonical representative

  Svec out;
  for (auto& [b, coef] : v) {
    if (b.kind != BasisIndex::Kind::Tuple)
      throw DimensionMismatch("Grothendieck operators expect tuple basis indices");
    validate_tuple(f, b.tup);
    TupleIndex t = b.tup;
    bool ok = false;
    switch (hit->family) {
      case CosetDesc::Family::A: {
        auto img = is_f ? seq_add_box(t.a[hit->block], mm) : seq_remove_box(t.a[hit->block], mm);
        if ((ok = img.has_value())) t.a[hit->block] = *img;
        break;
      }
      case CosetDesc::Family::B: {
        auto img = is_f ? seq_add_box(t.b[hit->block], -mm) : seq_remove_box(t.b[hit->block], -mm);
        if ((ok = img.has_value())) t.b[hit->block] = *img;
        break;
      }
      case CosetDesc::Family::Gamma: {
        auto img = is_f ? add_box_by_content(t.delta, mm) : remove_box_by_content(t.delta, mm);
        if ((ok = img.has_value())) t.delta = *img;
        break;
      }
      case CosetDesc::Family::Abar: {
        auto img =
            is_f ? seq_remove_box(t.abar[hit->block], -mm) : seq_add_box(t.abar[hit->block], -mm);
        if ((ok = img.has_value())) t.abar[hit->block] = *img;
        break;
      }
      case CosetDesc::Family::Bbar: {
        auto img = is_f ? seq_remove_box(t.bbar[hit->block], mm) : seq_add_box(t.bbar[hit->block], mm);
        if ((ok = img.has_value())) t.bbar[hit->block] = *img;
        break;
      }
      case CosetDesc::Family::GammaBar: {
        auto img = is_f ? remove_box_by_content(t.deltabar, -mm) : add_box_by_content(t.deltabar, -mm);
        if ((ok = img.has_value())) t.deltabar = *img;
        break;
      }
    }
    if (ok) sv_add(out, BasisIndex::tuple(t), coef);
  }
  return out;
}

}  // namespace slzdetail

inline Svec grothendieck_f(const FamilySpec& f, const AffineExponent& coset, int m, const Svec& v) {
  return slzdetail::grothendieck_apply(f, coset, m, v, true);
}
inline Svec grothendieck_e(const FamilySpec& f, const AffineExponent& coset, int m, const Svec& v) {
  return slzdetail::grothendieck_apply(f, coset, m, v, false);
}

// ----- the tensor-product isomorphism -----

// factor order: A wedges, B wedges (tau), Abar wedges (tau, dual),
// Bbar wedges (dual), Fock for delta, Fock (tau, dual) for deltabar
inline ModuleSpec iso_target_spec(const FamilySpec& f) {
  f.validate();
  std::vector<ModuleSpec> fs;
  for (auto& b : f.A) fs.push_back(ModuleSpec::wedge((int)b.alpha.size()));
  for (auto& b : f.B) fs.push_back(ModuleSpec::wedge((int)b.alpha.size()).twisted(Twist::Tau));
  for (auto& b : f.Abar)
    fs.push_back(ModuleSpec::wedge((int)b.alpha.size()).twisted(Twist::Tau).twisted(Twist::Dual));
  for (auto& b : f.Bbar) fs.push_back(ModuleSpec::wedge((int)b.alpha.size()).twisted(Twist::Dual));
  fs.push_back(ModuleSpec::fock());
  fs.push_back(ModuleSpec::fock().twisted(Twist::Tau).twisted(Twist::Dual));
  return ModuleSpec::tensor(std::move(fs));
}

inline size_t coset_factor_position(const FamilySpec& f, const CosetDesc& d) {
  size_t p = f.A.size(), q = f.B.size(), pb = f.Abar.size(), qb = f.Bbar.size();
  switch (d.family) {
    case CosetDesc::Family::A: return (size_t)d.block;
    case CosetDesc::Family::B: return p + (size_t)d.block;
    case CosetDesc::Family::Abar: return p + q + (size_t)d.block;
    case CosetDesc::Family::Bbar: return p + q + pb + (size_t)d.block;
    case CosetDesc::Family::Gamma: return p + q + pb + qb;
    case CosetDesc::Family::GammaBar: return p + q + pb + qb + 1;
  }
  throw InvalidInstance("unknown coset family");
}

// a nonincreasing sequence maps to the wedge vector with entries s_i - i + 1
inline BasisIndex sequence_wedge(const std::vector<int>& seq) {
  std::vector<int> w(seq.size());
  for (size_t s = 0; s < seq.size(); ++s) w[s] = seq[s] - (int)s;
  return BasisIndex::wedge(w);
}

inline BasisIndex iso_map(const FamilySpec& f, const TupleIndex& t) {
  validate_tuple(f, t);
  std::vector<BasisIndex> fs;
  for (auto& s : t.a) fs.push_back(sequence_wedge(s));
  for (auto& s : t.b) fs.push_back(sequence_wedge(s));
  for (auto& s : t.abar) fs.push_back(sequence_wedge(s));
  for (auto& s : t.bbar) fs.push_back(sequence_wedge(s));
  fs.push_back(BasisIndex::fock(t.delta));
  fs.push_back(BasisIndex::fock(t.deltabar));
  return BasisIndex::tensor(std::move(fs));
}

inline Svec iso_map(const FamilySpec& f, const Svec& v) {
  Svec out;
  for (auto& [b, c] : v) {
    if (b.kind != BasisIndex::Kind::Tuple)
      throw DimensionMismatch("iso_map expects tuple basis indices");
    sv_add(out, iso_map(f, b.tup), c);
  }
  return out;
}

// ----- relation checks -----

// [e_i, f_j] = 0 for i != j; [e_i, f_i] diagonal, eigenvalue = (number of
// f_i-moves available) - (number of e_i-moves), i.e. addable minus removable.
inline bool bracket_check(const ModuleSpec& spec, int i, int j,
                          const std::vector<BasisIndex>& sample) {
  for (auto& b : sample) {
    Svec v{{b, Rat(1)}};
    Svec lhs = apply_e(spec, i, apply_f(spec, j, v));
    Svec rhs = apply_f(spec, j, apply_e(spec, i, v));
    Svec d = sv_sub(lhs, rhs);
    if (i != j) {
      if (!d.empty()) return false;
      continue;
    }
    long expect = (long)apply_f(spec, i, v).size() - (long)apply_e(spec, i, v).size();
    Svec want;
    if (expect != 0) want.emplace(b, Rat(expect));
    if (d != want) return false;
  }
  return true;
}

}  // namespace stabrep
