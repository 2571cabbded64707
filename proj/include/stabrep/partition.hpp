#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <sstream>
#include <utility>

#include "stabrep/common.hpp"

namespace stabrep {

// Weakly decreasing positive parts; trailing zeros are stripped on entry.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw NotPartition("part " + std::to_string(parts[i]) + " is not positive");
      if (i && parts[i] > parts[i - 1])
        throw NotPartition("parts increase at position " + std::to_string(i + 1));
    }
  }

  int length() const { return static_cast<int>(parts.size()); }
  long long size() const {
    long long s = 0;
    for (int x : parts) s += x;
    return s;
  }
  bool empty() const { return parts.empty(); }
  // 1-based with zero padding, so formulas read like the math.
  int part(int i) const { return (i >= 1 && i <= length()) ? parts[i - 1] : 0; }

  auto operator<=>(const Partition&) const = default;
};

inline Partition conjugate(const Partition& p) {
  std::vector<int> c(p.part(1), 0);
  for (int j = 1; j <= p.part(1); ++j)
    c[j - 1] = static_cast<int>(std::count_if(p.parts.begin(), p.parts.end(),
                                              [j](int x) { return x >= j; }));
  return Partition(std::move(c));
}

// Side of the Durfee square: max { i : p_i >= i }.
inline int durfee(const Partition& p) {
  int d = 0;
  while (p.part(d + 1) >= d + 1) ++d;
  return d;
}

inline bool contains(const Partition& outer, const Partition& inner) {
  for (int i = 1; i <= inner.length(); ++i)
    if (inner.part(i) > outer.part(i)) return false;
  return true;
}

struct SkewShape {
  Partition outer, inner;
  SkewShape(Partition out, Partition in) : outer(std::move(out)), inner(std::move(in)) {
    if (!contains(outer, inner)) throw NotContained("inner shape is not contained in outer shape");
  }
  long long size() const { return outer.size() - inner.size(); }
};

// (k,l)-cut of a diagram: k rows off the top, l columns off the left of the
// remainder, gamma the part below and to the right of both.
struct CutDecomposition {
  int k = 0, l = 0;
  std::vector<int> alpha, beta;
  Partition gamma;
};

inline CutDecomposition cut(const Partition& p, int k, int l) {
  if (k < 0 || l < 0) throw CutTooDeep("cut depths must be nonnegative");
  int d = durfee(p);
  if (k > d || l > d)
    throw CutTooDeep("cut (" + std::to_string(k) + "," + std::to_string(l) +
                     ") exceeds Durfee side " + std::to_string(d));
  CutDecomposition out;
  out.k = k;
  out.l = l;
  for (int i = 1; i <= k; ++i) out.alpha.push_back(p.part(i) - l);
  Partition pc = conjugate(p);
  for (int j = 1; j <= l; ++j) out.beta.push_back(pc.part(j) - k);
  std::vector<int> g;
  for (int i = 1; i <= pc.part(l + 1) - k; ++i) g.push_back(p.part(k + i) - l);
  out.gamma = Partition(std::move(g));
  return out;
}

namespace detail {
inline bool weakly_decreasing_nonneg(const std::vector<int>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) return false;
    if (i && v[i] > v[i - 1]) return false;
  }
  return true;
}
}  // namespace detail

// Inverse of cut. Requires a triple that genuinely arises from a (k,l)-cut.
inline Partition assemble(const std::vector<int>& alpha, const std::vector<int>& beta,
                          const Partition& gamma, int k, int l) {
  if (static_cast<int>(alpha.size()) != k || static_cast<int>(beta.size()) != l)
    throw InvalidTriple("alpha/beta lengths must equal k/l");
  if (!detail::weakly_decreasing_nonneg(alpha)) throw InvalidTriple("alpha is not weakly decreasing nonnegative");
  if (!detail::weakly_decreasing_nonneg(beta)) throw InvalidTriple("beta is not weakly decreasing nonnegative");
  if (k > 0 && gamma.part(1) > alpha[k - 1]) throw InvalidTriple("gamma_1 exceeds alpha_k");
  if (l > 0 && gamma.length() > beta[l - 1]) throw InvalidTriple("gamma has more rows than beta_l");
  if (k > 0 && alpha[k - 1] + l < k) throw InvalidTriple("alpha_k + l < k: no diagram cuts to this triple");
  if (l > 0 && beta[l - 1] + k < l) throw InvalidTriple("beta_l + k < l: no diagram cuts to this triple");
  std::vector<int> rows;
  for (int i = 0; i < k; ++i) rows.push_back(alpha[i] + l);
  Partition bc = conjugate(Partition(beta));
  int below = std::max(l > 0 ? beta[0] : 0, gamma.length());
  for (int m = 1; m <= below; ++m) rows.push_back(bc.part(m) + gamma.part(m));
  Partition out{std::vector<int>(rows)};
  return out;
}

// Cells where a box can be added / removed, as (row, content) with
// content = column - row.
inline std::vector<std::pair<int, int>> addable_cells(const Partition& p) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= p.length() + 1; ++i)
    if (i == 1 || p.part(i - 1) > p.part(i)) out.emplace_back(i, p.part(i) + 1 - i);
  return out;
}

inline std::vector<std::pair<int, int>> removable_cells(const Partition& p) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= p.length(); ++i)
    if (p.part(i) > p.part(i + 1)) out.emplace_back(i, p.part(i) - i);
  return out;
}

inline std::optional<Partition> add_box_by_content(const Partition& p, int c) {
  for (auto [row, cc] : addable_cells(p))
    if (cc == c) {
      std::vector<int> v = p.parts;
      if (row > p.length()) v.push_back(1);
      else ++v[row - 1];
      return Partition(std::move(v));
    }
  return std::nullopt;
}

inline std::optional<Partition> remove_box_by_content(const Partition& p, int c) {
  for (auto [row, cc] : removable_cells(p))
    if (cc == c) {
      std::vector<int> v = p.parts;
      --v[row - 1];
      return Partition(std::move(v));
    }
  return std::nullopt;
}

struct Bipartition {
  Partition plus, minus;
  auto operator<=>(const Bipartition&) const = default;
  long long size() const { return plus.size() + minus.size(); }
};

// Text formats: "5,4,2,1" ("" for the empty partition), bipartitions as
// "plus|minus" with either side possibly empty.
inline Partition parse_partition(const std::string& s) {
  std::vector<int> v;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) {
      if (s.find_first_not_of(" \t,") == std::string::npos) continue;
      throw ParseError("empty part in partition '" + s + "'");
    }
    size_t b = tok.find_last_not_of(" \t");
    tok = tok.substr(a, b - a + 1);
    try {
      size_t used = 0;
      int x = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::exception&) {
      throw ParseError("bad partition part '" + tok + "'");
    }
  }
  try {
    return Partition(std::move(v));
  } catch (const NotPartition& e) {
    throw ParseError(std::string("'") + s + "': " + e.what());
  }
}

inline Bipartition parse_bipartition(const std::string& s) {
  size_t bar = s.find('|');
  if (bar == std::string::npos) throw ParseError("bipartition '" + s + "' lacks '|'");
  if (s.find('|', bar + 1) != std::string::npos) throw ParseError("bipartition '" + s + "' has two '|'");
  return Bipartition{parse_partition(s.substr(0, bar)), parse_partition(s.substr(bar + 1))};
}

inline std::string format_partition(const Partition& p) {
  std::string out;
  for (int i = 0; i < p.length(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.parts[i]);
  }
  return out;
}

inline std::string format_bipartition(const Bipartition& b) {
  return format_partition(b.plus) + "|" + format_partition(b.minus);
}

}  // namespace stabrep
