#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabrep {

using Int = mpz_class;
using Rat = mpq_class;

// Input that violates a documented precondition. The CLI maps these to exit
// code 2; anything else escaping to main is a bug and exits 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

#define STABREP_ERROR(Name)                                              \
  struct Name : ValidationError {                                        \
    explicit Name(const std::string& msg) : ValidationError(msg) {}      \
  }

STABREP_ERROR(NotPartition);
STABREP_ERROR(NotContained);
STABREP_ERROR(CutTooDeep);
STABREP_ERROR(InvalidTriple);
STABREP_ERROR(InvalidInstance);
STABREP_ERROR(RankTooSmall);
STABREP_ERROR(RankCeilingExceeded);
STABREP_ERROR(NonDominant);
STABREP_ERROR(SeriesMismatch);
STABREP_ERROR(OddIndexForOsp);
STABREP_ERROR(IndexOutOfRange);
STABREP_ERROR(OverlappingIndexSets);
STABREP_ERROR(DimensionMismatch);
STABREP_ERROR(InactiveCoset);
STABREP_ERROR(InactiveIndex);
STABREP_ERROR(ParseError);

#undef STABREP_ERROR

inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Exact integer power for small exponents.
inline Rat rat_pow(const Rat& base, long k) {
  Rat out = 1, b = base;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

// Deterministic RNG for sampling-based checks: fixed algorithm, fixed
// reduction, so a (command, seed) pair yields identical draws everywhere.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = ~0ull - ~0ull % n;
    std::uint64_t v;
    do v = next();
    while (v >= lim);
    return v % n;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace stabrep
