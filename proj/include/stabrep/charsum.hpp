#pragma once

#include <optional>

#include "stabrep/stable.hpp"

namespace stabrep {

// Exponent of q = e^z: a rational constant plus a rational combination of
// named formal generators ("t", "a1", ...). Canonical: no zero coefficients.
struct AffineExponent {
  Rat c0;
  std::map<std::string, Rat> coef;

  AffineExponent() : c0(0) {}
  explicit AffineExponent(Rat c) : c0(std::move(c)) {}
  static AffineExponent gen(const std::string& name, Rat scale = 1) {
    AffineExponent e;
    if (scale != 0) e.coef[name] = std::move(scale);
    return e;
  }
  void trim() {
    for (auto it = coef.begin(); it != coef.end();)
      it = it->second == 0 ? coef.erase(it) : std::next(it);
  }
  AffineExponent& operator+=(const AffineExponent& o) {
    c0 += o.c0;
    for (const auto& [g, c] : o.coef) coef[g] += c;
    trim();
    return *this;
  }
  AffineExponent operator+(const AffineExponent& o) const {
    AffineExponent r = *this;
    return r += o;
  }
  AffineExponent operator+(const Rat& c) const {
    AffineExponent r = *this;
    r.c0 += c;
    return r;
  }
  AffineExponent operator-() const {
    AffineExponent r;
    r.c0 = -c0;
    for (const auto& [g, c] : coef) r.coef[g] = -c;
    return r;
  }
  AffineExponent operator-(const AffineExponent& o) const { return *this + (-o); }
  bool operator==(const AffineExponent& o) const { return c0 == o.c0 && coef == o.coef; }
  bool operator<(const AffineExponent& o) const {
    if (int c = cmp(c0, o.c0); c != 0) return c < 0;
    auto i = coef.begin();
    auto j = o.coef.begin();
    for (; i != coef.end() && j != o.coef.end(); ++i, ++j) {
      if (i->first != j->first) return i->first < j->first;
      if (int c = cmp(i->second, j->second); c != 0) return c < 0;
    }
    return j != o.coef.end();
  }
  bool is_constant() const { return coef.empty(); }
  std::string str() const {
    std::string s = rat_str(c0);
    for (const auto& [g, c] : coef) s += "+" + rat_str(c) + "*" + g;
    return s;
  }
};

// S(z) = sum coeff * e^{exponent z}, i.e. a Laurent-style sum of q-powers.
struct ExponentialSum {
  std::map<AffineExponent, Rat> terms;

  void add(const AffineExponent& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  ExponentialSum& operator+=(const ExponentialSum& o) {
    for (const auto& [e, c] : o.terms) add(e, c);
    return *this;
  }
  ExponentialSum operator+(const ExponentialSum& o) const {
    ExponentialSum r = *this;
    return r += o;
  }
  ExponentialSum operator-(const ExponentialSum& o) const {
    ExponentialSum r = *this;
    for (const auto& [e, c] : o.terms) r.add(e, -c);
    return r;
  }
  ExponentialSum scaled(const Rat& s) const {
    ExponentialSum r;
    for (const auto& [e, c] : terms) r.add(e, c * s);
    return r;
  }
  // multiply by q^{s}
  ExponentialSum shifted(const AffineExponent& s) const {
    ExponentialSum r;
    for (const auto& [e, c] : terms) r.add(e + s, c);
    return r;
  }
  // q -> q^{-1}
  ExponentialSum bar() const {
    ExponentialSum r;
    for (const auto& [e, c] : terms) r.add(-e, c);
    return r;
  }
  ExponentialSum substituted(const std::map<std::string, Rat>& vals) const {
    ExponentialSum r;
    for (const auto& [e, c] : terms) {
      AffineExponent ne;
      ne.c0 = e.c0;
      for (const auto& [g, cc] : e.coef) {
        auto it = vals.find(g);
        if (it == vals.end()) ne.coef[g] = cc;
        else ne.c0 += cc * it->second;
      }
      r.add(ne, c);
    }
    return r;
  }
  bool operator==(const ExponentialSum& o) const { return terms == o.terms; }
  bool empty() const { return terms.empty(); }
};

// [x]_q * q^{shift} * (q-1) = q^{x+shift} - q^{shift}
inline ExponentialSum q_number_term(const AffineExponent& x, const AffineExponent& shift) {
  ExponentialSum s;
  s.add(x + shift, 1);
  s.add(shift, -1);
  return s;
}

enum class CharSeries { gl, osp };

// chi(z) = numerator/(e^z - 1) for gl, numerator/(e^{z/2} - e^{-z/2}) for osp.
struct CentralCharacter {
  CharSeries series = CharSeries::gl;
  ExponentialSum numerator;
};

// Sparse polynomial over the generator names.
struct GeneratorPoly {
  std::map<std::map<std::string, int>, Rat> terms;

  void add(const std::map<std::string, int>& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  GeneratorPoly& operator+=(const GeneratorPoly& o) {
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  GeneratorPoly operator*(const GeneratorPoly& o) const {
    GeneratorPoly r;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) {
        std::map<std::string, int> m = m1;
        for (const auto& [g, e] : m2) {
          m[g] += e;
          if (m[g] == 0) m.erase(g);
        }
        r.add(m, c1 * c2);
      }
    return r;
  }
  static GeneratorPoly constant(const Rat& c) {
    GeneratorPoly p;
    p.add({}, c);
    return p;
  }
  static GeneratorPoly from_affine(const AffineExponent& e) {
    GeneratorPoly p;
    p.add({}, e.c0);
    for (const auto& [g, c] : e.coef) p.add({{g, 1}}, c);
    return p;
  }
  bool operator==(const GeneratorPoly& o) const { return terms == o.terms; }
  Rat eval(const std::map<std::string, Rat>& vals) const {
    Rat total = 0;
    for (const auto& [m, c] : terms) {
      Rat v = c;
      for (const auto& [g, e] : m) {
        auto it = vals.find(g);
        if (it == vals.end()) throw ParseError("no value for generator '" + g + "'");
        v *= rat_pow(it->second, e);
      }
      total += v;
    }
    return total;
  }
  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms) {
      if (!s.empty()) s += " + ";
      s += rat_str(c);
      for (const auto& [g, e] : m) {
        s += "*" + g;
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }
};

// chi_bnu for gl: numerator
// sum_j (q^{nu_j}-1) q^{(t+1)/2-j} + sum_j (q^{-nubar_j}-1) q^{-(t+1)/2+j}.
inline CentralCharacter char_of_bipartition_gl(const Bipartition& b) {
  AffineExponent half_t1 = AffineExponent::gen("t", Rat(1, 2)) + Rat(1, 2);
  ExponentialSum num;
  for (int j = 1; j <= b.plus.length(); ++j)
    num += q_number_term(AffineExponent(Rat(b.plus.part(j))), half_t1 + Rat(-j));
  for (int j = 1; j <= b.minus.length(); ++j)
    num += q_number_term(AffineExponent(Rat(-b.minus.part(j))), -half_t1 + Rat(j));
  return CentralCharacter{CharSeries::gl, std::move(num)};
}

// A cut triple with formal alpha, beta entries.
struct FormalTriple {
  int k = 0, l = 0;
  std::vector<AffineExponent> alpha, beta;
  Partition gamma;
};

inline FormalTriple shifted_triple(const FormalTriple& t, const std::vector<int>& a,
                                   const std::vector<int>& b, Partition delta) {
  FormalTriple s{t.k, t.l, t.alpha, t.beta, std::move(delta)};
  for (int i = 0; i < t.k; ++i) s.alpha[i] = s.alpha[i] + Rat(a[i]);
  for (int j = 0; j < t.l; ++j) s.beta[j] = s.beta[j] + Rat(b[j]);
  return s;
}

inline FormalTriple family_triple(const HomFamily& f) {
  FormalTriple t;
  t.k = f.k;
  t.l = f.l;
  for (int i = 1; i <= f.k; ++i) t.alpha.push_back(AffineExponent::gen("a" + std::to_string(i)));
  for (int j = 1; j <= f.l; ++j) t.beta.push_back(AffineExponent::gen("b" + std::to_string(j)));
  t.gamma = f.gamma;
  return t;
}

// chi_lambda for lambda = [alpha, beta, gamma], m = len(gamma): numerator
// q^{(t+1)/2} sum_j ( (q^{alpha_j+l}-1)q^{-j} + (q^{beta_j-m}-1)q^{-beta_j+j-1-k}
//                    + (q^{gamma_j+l}-1)q^{-k-j} ).
// The beta_j-m (not beta_j) is forced: rows below the gamma block form the
// conjugate of beta-m, and only this version matches the assembled diagram.
inline CentralCharacter char_of_triple_gl(const FormalTriple& t) {
  if (static_cast<int>(t.alpha.size()) != t.k || static_cast<int>(t.beta.size()) != t.l)
    throw InvalidTriple("alpha/beta lengths must equal k/l");
  ExponentialSum num;
  int m = t.gamma.length();
  for (int j = 1; j <= t.k; ++j)
    num += q_number_term(t.alpha[j - 1] + Rat(t.l), AffineExponent(Rat(-j)));
  for (int j = 1; j <= t.l; ++j)
    num += q_number_term(t.beta[j - 1] + Rat(-m), -t.beta[j - 1] + Rat(j - 1 - t.k));
  for (int j = 1; j <= t.gamma.length(); ++j)
    num += q_number_term(AffineExponent(Rat(t.gamma.part(j) + t.l)), AffineExponent(Rat(-t.k - j)));
  AffineExponent half_t1 = AffineExponent::gen("t", Rat(1, 2)) + Rat(1, 2);
  return CentralCharacter{CharSeries::gl, num.shifted(half_t1)};
}

namespace chardetail {
// chi~ numerators share the gl shape; over the osp denominator the factor
// q^{-1/2} appears, and antisymmetrization in z gives the even numerator.
inline CentralCharacter osp_from_tilde(const ExponentialSum& gl_num) {
  ExponentialSum m = gl_num.shifted(AffineExponent(Rat(-1, 2)));
  ExponentialSum num = (m + m.bar()).scaled(Rat(1, 2));
  return CentralCharacter{CharSeries::osp, std::move(num)};
}
}  // namespace chardetail

inline CentralCharacter char_osp(const Partition& nu) {
  return chardetail::osp_from_tilde(char_of_bipartition_gl(Bipartition{nu, {}}).numerator);
}

inline CentralCharacter char_osp(const FormalTriple& t) {
  return chardetail::osp_from_tilde(char_of_triple_gl(t).numerator);
}

// (chi, psi) of a Hom family, with alpha_j, beta_j as generators a1.., b1..
inline std::pair<CentralCharacter, CentralCharacter> char_pair_of_hom(const HomFamily& f,
                                                                     CharSeries series) {
  FormalTriple lam = family_triple(f);
  FormalTriple mu = shifted_triple(lam, f.a, f.b, f.delta);
  if (series == CharSeries::gl)
    return {char_of_triple_gl(lam), char_of_triple_gl(mu)};
  return {char_osp(lam), char_osp(mu)};
}

// chi(C_k) = sum over numerator terms of coeff * exponent^k; closed form, no
// series expansion. Odd k vanishes identically for osp and is rejected there.
inline GeneratorPoly raw_ck_moment(const ExponentialSum& num, long k) {
  GeneratorPoly total;
  for (const auto& [e, c] : num.terms) {
    GeneratorPoly p = GeneratorPoly::constant(1);
    GeneratorPoly base = GeneratorPoly::from_affine(e);
    for (long i = 0; i < k; ++i) p = p * base;
    total += p * GeneratorPoly::constant(c);
  }
  return total;
}

inline GeneratorPoly ck_value(const CentralCharacter& cc, long k) {
  if (k < 1) throw IndexOutOfRange("k must be positive");
  if (cc.series == CharSeries::osp && k % 2 == 1)
    throw OddIndexForOsp("C_" + std::to_string(k) + " is not defined for osp; use even k");
  return raw_ck_moment(cc.numerator, k);
}

// The finite-rank eigenvalues the symbolic ck specializes to.
inline Rat finite_ck_value(const std::vector<int>& hw, int n, long k, Series s) {
  if (static_cast<int>(hw.size()) != n) throw DimensionMismatch("weight length must equal n");
  for (size_t i = 1; i < hw.size(); ++i)
    if (hw[i] > hw[i - 1]) throw NonDominant("weight entries increase");
  if (s != Series::GL) {
    if (!hw.empty() && hw.back() < 0) throw NonDominant("negative entry in type B/C weight");
    if (k % 2 == 1) throw OddIndexForOsp("odd C_k undefined for types B/C");
  }
  Rat total = 0;
  for (int i = 1; i <= n; ++i) {
    Rat rho;
    switch (s) {
      case Series::GL: rho = Rat(n + 1, 2); break;
      case Series::SO_ODD: rho = Rat(2 * n + 1, 2); break;
      case Series::SP: rho = Rat(n); break;
    }
    rho.canonicalize();
    rho -= i;
    total += rat_pow(rho + hw[i - 1], k) - rat_pow(rho, k);
  }
  return total;
}

// Division of an exponential sum by (q - 1), done independently inside each
// Z-coset of exponents (same generator part, constants differing by
// integers). Returns the quotient or the first failing coset.
struct QuotientResult {
  bool ok = false;
  std::map<AffineExponent, Rat> quotient;
  AffineExponent failing;
  std::string reason;
};

inline QuotientResult divide_by_q_minus_1(const ExponentialSum& d) {
  QuotientResult res;
  // coset key: generator part plus fractional part of the constant
  std::map<std::pair<std::map<std::string, Rat>, Rat>, std::vector<std::pair<Rat, Rat>>> cosets;
  for (const auto& [e, c] : d.terms) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), e.c0.get_num_mpz_t(), e.c0.get_den_mpz_t());
    Rat frac = e.c0 - Rat(q);
    cosets[{e.coef, frac}].emplace_back(e.c0, c);
  }
  for (auto& [key, terms] : cosets) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return cmp(a.first, b.first) > 0; });
    Rat sum = 0;
    for (const auto& [x, c] : terms) sum += c;
    AffineExponent rep;
    rep.c0 = terms.front().first;
    rep.coef = key.first;
    if (sum != 0) {
      res.failing = rep;
      res.reason = "coset coefficients sum to " + rat_str(sum);
      return res;
    }
    // quotient coefficient at exponent x-1 is the sum of terms above x-1
    Rat run = 0;
    size_t i = 0;
    Rat x = terms.front().first;
    Rat stop = terms.back().first;
    while (cmp(x, stop) > 0) {
      while (i < terms.size() && terms[i].first == x) run += terms[i++].second;
      AffineExponent e;
      e.c0 = x - 1;
      e.coef = key.first;
      if (run != 0) res.quotient[e] = run;
      x -= 1;
    }
  }
  res.ok = true;
  return res;
}

struct HcResult {
  bool compatible = false;
  CharSeries series = CharSeries::gl;
  // gl: chi - psi = sum_b e^{bz} - sum_c e^{cz}; plus holds the b's.
  // osp: chi - psi = sum (m/1) sinh((2b+1)z/2); plus m>0, minus m<0 (|m| stored).
  std::vector<std::pair<AffineExponent, Int>> plus, minus;
  std::optional<AffineExponent> failing;
  std::string reason;
};

inline HcResult hc_compatibility(const CentralCharacter& chi, const CentralCharacter& psi) {
  if (chi.series != psi.series) throw SeriesMismatch("characters belong to different series");
  HcResult out;
  out.series = chi.series;
  ExponentialSum d = chi.numerator - psi.numerator;
  if (chi.series == CharSeries::gl) {
    QuotientResult q = divide_by_q_minus_1(d);
    if (!q.ok) {
      out.failing = q.failing;
      out.reason = q.reason;
      return out;
    }
    for (const auto& [e, c] : q.quotient) {
      if (!is_integer(c)) {
        out.failing = e;
        out.reason = "non-integer multiplicity " + rat_str(c);
        return out;
      }
      Int m = c.get_num();
      if (m > 0) out.plus.emplace_back(e, m);
      else out.minus.emplace_back(e, -m);
    }
    out.compatible = true;
    return out;
  }
  // osp: (chi-psi) = sum m_i sinh((2 b_i + 1) z / 2);  multiply the numerator
  // by q^{1/2} and divide by (q-1); quotient coefficient at x is m/2 for the
  // pair (x, -x), b = x - 1/2.
  QuotientResult q = divide_by_q_minus_1(d.shifted(AffineExponent(Rat(1, 2))));
  if (!q.ok) {
    out.failing = q.failing;
    out.reason = q.reason;
    return out;
  }
  std::map<AffineExponent, Rat> rem = q.quotient;
  while (!rem.empty()) {
    auto it = std::prev(rem.end());  // largest exponent first
    AffineExponent x = it->first;
    Rat c = it->second;
    rem.erase(it);
    AffineExponent nx = -x;
    auto jt = rem.find(nx);
    Rat cneg = jt == rem.end() ? Rat(0) : jt->second;
    if (jt != rem.end()) rem.erase(jt);
    if (nx == x || cneg != -c) {
      out.failing = x;
      out.reason = "quotient not antisymmetric under exponent negation";
      return out;
    }
    Rat m = 2 * c;
    if (!is_integer(m)) {
      out.failing = x;
      out.reason = "non-integer sinh multiplicity " + rat_str(m);
      return out;
    }
    AffineExponent b = x + Rat(-1, 2);
    Int mi = m.get_num();
    if (mi > 0) out.plus.emplace_back(b, mi);
    else out.minus.emplace_back(b, -mi);
  }
  out.compatible = true;
  return out;
}

// Row form and conjugate form of the same q-number sum.
inline bool transpose_identity_check(const Partition& lam) {
  ExponentialSum lhs, rhs;
  for (int j = 1; j <= lam.length(); ++j)
    lhs += q_number_term(AffineExponent(Rat(lam.part(j))), AffineExponent(Rat(-j)));
  Partition lc = conjugate(lam);
  for (int k = 1; k <= lc.length(); ++k)
    rhs += q_number_term(AffineExponent(Rat(lc.part(k))), AffineExponent(Rat(k - 1 - lc.part(k))));
  return lhs == rhs;
}

}  // namespace stabrep
