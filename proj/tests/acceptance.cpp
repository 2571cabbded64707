// Acceptance gate: one pass/fail line per criterion, wall clock against the
// stated budget, nonzero exit if anything fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

#include <stabrep/annihilator.hpp>
#include <stabrep/charsum.hpp>
#include <stabrep/slz.hpp>
#include <stabrep/stable.hpp>
#include <stabrep/weyl.hpp>

#include "ssyt_oracle.hpp"

using namespace stabrep;

namespace {

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Fail(what);
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int mx) -> void {
    out.push_back(Partition(cur));
    for (int p = std::min(rem, mx); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

Partition remove_boxes(Rng& rng, const Partition& p, int r) {
  std::vector<int> v;
  for (int i = 1; i <= p.length(); ++i) v.push_back(p.part(i));
  while (r-- > 0) {
    std::vector<size_t> rows;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] > (i + 1 < v.size() ? v[i + 1] : 0)) rows.push_back(i);
    if (rows.empty()) break;
    --v[rows[rng.below(rows.size())]];
  }
  while (!v.empty() && v.back() == 0) v.pop_back();
  return Partition(v);
}

std::string pstr(const Partition& p) { return "(" + format_partition(p) + ")"; }

// ----- criterion 1 -----

void crit_stable_vs_oracle() {
  std::vector<HomFamily> fams = {make_family(1, 0, {0}, {}, {}, {}),
                                 make_family(1, 0, {1}, {}, {}, {})};
  auto parts = partitions_up_to(3);
  int checked = 0;
  for (size_t fi = 0; fi < fams.size(); ++fi)
    for (auto& nu : parts)
      for (auto& nub : parts) {
        StabilityReport rep = verify_stability_gl(fams[fi], Bipartition{nu, nub}, 4, 6);
        require(rep.stabilized && rep.matches,
                "family " + std::to_string(fi) + " nu " + pstr(nu) + "|" + pstr(nub) +
                    (rep.stabilized ? " formula disagrees with the oracle" : " did not stabilize"));
        ++checked;
      }
  require(checked == 98, "expected 98 stability reports");
}

// ----- criterion 2 -----

void crit_finite_theorem() {
  Rng rng(2026);
  int done = 0;
  while (done < 25) {
    Partition lam = testoracle::random_partition(rng, 5);
    Partition mu = testoracle::random_partition(rng, 5);
    long budget = std::min(lam.size(), mu.size());
    int r = static_cast<int>(rng.range(0, budget));
    Partition nu = remove_boxes(rng, lam, r);
    Partition nub = remove_boxes(rng, mu, r);
    if (done % 5 == 4) nub = remove_boxes(rng, mu, static_cast<int>(rng.range(0, budget)));
    Bipartition bnu{nu, nub};
    if (std::min(lam.length() + nub.length(), mu.length() + nu.length()) > 6) continue;
    Int fin = finite_hom_multiplicity_gl(lam, mu, bnu, 6);
    Int orc = hom_multiplicity(6, Bipartition{{}, mu}, bnu, lam);
    require(fin == orc, "lambda " + pstr(lam) + " mu " + pstr(mu) + " nu " + pstr(nu) + "|" +
                            pstr(nub) + ": formula " + fin.get_str() + " oracle " + orc.get_str());
    ++done;
  }
}

// ----- criterion 3 -----

void crit_king() {
  auto small = partitions_up_to(2);
  auto nus = partitions_up_to(4);
  Group so5 = make_group(Series::SO_ODD, 2);
  Group sp4 = make_group(Series::SP, 2);
  for (auto& lam : small)
    for (auto& mu : small) {
      if (lam.length() + mu.length() > 2) continue;  // stable range of rank 2
      auto dso = tensor_decompose(so5, partition_weight(lam, 2), partition_weight(mu, 2));
      auto dsp = tensor_decompose(sp4, partition_weight(lam, 2), partition_weight(mu, 2));
      for (auto& nu : nus) {
        if (nu.length() > 2) continue;
        Int king = king_multiplicity(lam, mu, nu);
        Weight w = partition_weight(nu, 2);
        Int vso = dso.count(w) ? dso.at(w) : Int(0);
        Int vsp = dsp.count(w) ? dsp.at(w) : Int(0);
        require(king == vso && king == vsp,
                "king " + pstr(lam) + " x " + pstr(mu) + " -> " + pstr(nu) + ": " + king.get_str() +
                    " vs so5 " + vso.get_str() + " sp4 " + vsp.get_str());
      }
    }

  HomFamily f = make_family(1, 0, {0}, {}, {}, {});
  for (const Partition& nu : {Partition{}, Partition({1, 1}), Partition({2})})
    for (Series s : {Series::SO_ODD, Series::SP}) {
      StabilityReport rep = verify_stability_osp(f, nu, s, 3, 4);
      require(rep.stabilized && rep.matches,
              std::string(s == Series::SP ? "sp" : "o") + " family at nu " + pstr(nu) +
                  (rep.stabilized ? " formula disagrees with the oracle" : " did not stabilize"));
    }
}

// ----- criterion 4 -----

void crit_central_characters() {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Partition lam = testoracle::random_partition(rng, 20);
    require(transpose_identity_check(lam), "transpose identity fails at " + pstr(lam));
  }

  Rng rng2(7);
  int done = 0;
  while (done < 10) {
    int k = static_cast<int>(rng2.range(0, 2));
    int l = static_cast<int>(rng2.range(0, 2));
    Partition gamma = testoracle::random_partition(rng2, 3);
    HomFamily f = make_family(k, l, std::vector<int>(k, 0), std::vector<int>(l, 0), gamma, gamma);
    int n = 8 + static_cast<int>(rng2.range(0, 6));
    std::vector<int> av, bv;
    try {
      std::tie(av, bv) = default_instantiation(f, n);
    } catch (const InvalidInstance&) {
      continue;
    }
    Partition lam = instantiate_family(f, av, bv, n).lambda_n;

    FormalTriple t = family_triple(f);
    std::map<std::string, Rat> vals{{"t", Rat(n)}};
    for (int i = 0; i < k; ++i) vals["a" + std::to_string(i + 1)] = Rat(av[i]);
    for (int j = 0; j < l; ++j) vals["b" + std::to_string(j + 1)] = Rat(bv[j]);
    auto sym = char_of_triple_gl(t).numerator.substituted(vals);
    auto conc = char_of_bipartition_gl(Bipartition{lam, {}}).numerator.substituted({{"t", Rat(n)}});
    require(sym == conc, "triple and assembled numerators differ at rank " + std::to_string(n));
    for (long kk = 1; kk <= 6; ++kk)
      require(raw_ck_moment(sym, kk).eval({}) == finite_ck_value(partition_weight(lam, n), n, kk, Series::GL),
              "C_" + std::to_string(kk) + " moment mismatch at rank " + std::to_string(n));
    ++done;
  }

  Rng rng3(19);
  for (int i = 0; i < 10; ++i) {
    Partition nu = testoracle::random_partition(rng3, 5);
    auto c = char_osp(nu);
    for (long k = 1; k <= 5; k += 2)
      require(raw_ck_moment(c.numerator, k).terms.empty(),
              "odd C_" + std::to_string(k) + " does not vanish for osp nu " + pstr(nu));
  }
}

// ----- criterion 5 -----

void crit_hc_compatibility() {
  std::vector<HomFamily> fams = {make_family(1, 0, {0}, {}, {}, {}),
                                 make_family(1, 0, {1}, {}, {}, {})};
  for (auto& f : fams)
    for (CharSeries s : {CharSeries::gl, CharSeries::osp}) {
      auto [chi, psi] = char_pair_of_hom(f, s);
      HcResult r = hc_compatibility(chi, psi);
      require(r.compatible, std::string("family pair incompatible for ") +
                                (s == CharSeries::gl ? "gl" : "osp") + ": " + r.reason);
    }

  ExponentialSum half;
  half.add(AffineExponent(Rat(2)), Rat(1, 2));
  half.add(AffineExponent(Rat(1)), Rat(-1, 2));
  CentralCharacter bad{CharSeries::gl, half};
  CentralCharacter zero{CharSeries::gl, {}};
  require(!hc_compatibility(bad, zero).compatible,
          "half-coefficient counterexample reported compatible");
}

// ----- criterion 6 -----

void crit_annihilators() {
  using K = ModuleFactor::Kind;
  for (int n = 1; n <= 5; ++n) {
    GroupSpec g(Algebra::GL, n);
    for (int m = 1; m <= 4; ++m) {
      ModuleSpace sv(g, {{K::SymV, m}});
      ModuleSpace sd(g, {{K::SymVdual, m}});
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) {
              require(check_annihilates(elementary_annihilator(i, j, k, l, ElemVariant::SymV), sv),
                      "elementary symV fails at n=" + std::to_string(n) + " m=" + std::to_string(m));
              require(check_annihilates(elementary_annihilator(i, j, k, l, ElemVariant::SymVdual), sd),
                      "elementary symVdual fails at n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
    }
  }

  GroupSpec gl6(Algebra::GL, 6);
  ModuleSpace mix(gl6, {{K::SymV, 2}, {K::SymVdual, 1}});
  require(check_annihilates(minor({1, 2, 3}, {4, 5, 6}, gl6), mix),
          "3x3 gl minor does not annihilate S^2V (x) S^1V*");
  require(!check_annihilates(minor({1, 2}, {3, 4}, gl6), mix),
          "2x2 gl minor unexpectedly annihilates S^2V (x) S^1V*");

  for (Algebra alg : {Algebra::O, Algebra::SP}) {
    GroupSpec g(alg, 6);
    auto m3 = minor({1, 2, 3}, {4, 5, 6}, g);
    for (int m = 1; m <= 3; ++m)
      require(check_annihilates(m3, ModuleSpace(g, {{K::SymV, m}})),
              g.str() + " minor fails on S^" + std::to_string(m) + "V");
  }

  for (Algebra alg : {Algebra::GL, Algebra::O, Algebra::SP}) {
    SuperPoly sym = super_symbol({1, 2, 3}, {4, 5, 6}, 1, alg);
    require(!sym.is_zero(), "super symbol vanishes identically");
    require(nilradical_check(sym), "super symbol escapes the nilradical");
    require(power_vanishes(sym, 7), "7th power of the super symbol does not vanish");
  }

  require(degree_bound(1, Algebra::GL).value == 21, "degree_bound(gl,1) != 21");
  require(degree_bound(2, Algebra::GL).value == 105, "degree_bound(gl,2) != 105");
}

// ----- criterion 7 -----

Svec unit(const BasisIndex& b) { return {{b, Rat(1)}}; }

FamilySpec rich_family() {
  FamilySpec f;
  f.A = {{"A1", {1, 0}}, {"A2", {0}}};
  f.B = {{"B1", {2, 0}}};
  f.Abar = {{"C1", {0}}};
  f.Bbar = {{"D1", {1, 0}}};
  f.gamma = Partition({2, 1});
  f.gammabar = Partition({1});
  return f;
}

std::vector<BasisIndex> tuple_sample(const FamilySpec& f, size_t cap) {
  std::vector<BasisIndex> out{BasisIndex::tuple(base_tuple(f))};
  auto table = coset_table(f);
  for (size_t at = 0; at < out.size() && out.size() < cap; ++at)
    for (auto& d : table)
      for (int m = -2; m <= 2; ++m)
        for (auto& [b, c] : grothendieck_f(f, d.coset, m, unit(out[at]))) {
          (void)c;
          if (std::find(out.begin(), out.end(), b) == out.end() && out.size() < cap)
            out.push_back(b);
        }
  return out;
}

void crit_slz() {
  std::vector<std::vector<Twist>> twist_sets = {
      {}, {Twist::Dual}, {Twist::Tau}, {Twist::Tau, Twist::Dual}};

  std::vector<BasisIndex> fock_s;
  for (auto& p : partitions_up_to(8)) fock_s.push_back(BasisIndex::fock(p));
  std::vector<BasisIndex> cz_s;
  for (int c = -10; c <= 10; ++c) cz_s.push_back(BasisIndex::integer(c));
  std::vector<std::pair<ModuleSpec, std::vector<BasisIndex>>> modules = {
      {ModuleSpec::fock(), fock_s}, {ModuleSpec::cz(), cz_s}};
  for (int n = 1; n <= 4; ++n) {
    std::vector<BasisIndex> ws;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
      if (static_cast<int>(cur.size()) == n) {
        ws.push_back(BasisIndex::wedge(cur));
        return;
      }
      for (int v = next; v >= -4; --v) {
        cur.push_back(v);
        self(self, v - 1);
        cur.pop_back();
      }
    };
    rec(rec, 4);
    modules.emplace_back(ModuleSpec::wedge(n), ws);
  }
  for (auto& [base, sample] : modules)
    for (auto& tw : twist_sets) {
      ModuleSpec spec = base;
      for (Twist t : tw) spec = spec.twisted(t);
      for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j)
          require(bracket_check(spec, i, j, sample),
                  "bracket fails at i=" + std::to_string(i) + " j=" + std::to_string(j));
    }

  FamilySpec f = rich_family();
  auto table = coset_table(f);
  auto sample = tuple_sample(f, 55);
  require(sample.size() >= 50, "tuple orbit too small");

  for (size_t x = 0; x < table.size(); ++x)
    for (size_t y = x + 1; y < table.size(); ++y)
      for (int m1 = -1; m1 <= 1; ++m1)
        for (int m2 = -1; m2 <= 1; ++m2)
          for (size_t s = 0; s < 25; ++s) {
            Svec v = unit(sample[s]);
            require(grothendieck_f(f, table[x].coset, m1, grothendieck_f(f, table[y].coset, m2, v)) ==
                        grothendieck_f(f, table[y].coset, m2, grothendieck_f(f, table[x].coset, m1, v)),
                    "distinct coset f operators do not commute");
            require(grothendieck_e(f, table[x].coset, m1, grothendieck_f(f, table[y].coset, m2, v)) ==
                        grothendieck_f(f, table[y].coset, m2, grothendieck_e(f, table[x].coset, m1, v)),
                    "distinct coset e/f operators do not commute");
          }

  ModuleSpec target = iso_target_spec(f);
  for (auto& d : table) {
    size_t pos = coset_factor_position(f, d);
    for (auto& b : sample) {
      Svec v = unit(b);
      Svec w = iso_map(f, v);
      for (int m = -2; m <= 2; ++m) {
        require(iso_map(f, grothendieck_f(f, d.coset, m, v)) == apply_f_at(target, pos, m, w),
                "iso_map does not intertwine f on coset position " + std::to_string(pos));
        require(iso_map(f, grothendieck_e(f, d.coset, m, v)) == apply_e_at(target, pos, m, w),
                "iso_map does not intertwine e on coset position " + std::to_string(pos));
      }
    }
  }

  auto parts3 = partitions_up_to(3);
  int boxes = 0;
  for (auto& lam : parts3)
    for (auto& lbar : parts3) {
      if (lam.size() + lbar.size() > 3) continue;
      Bipartition b{lam, lbar};
      auto eigs = box_operator_eigenvalues(4, b);
      require(!eigs.empty(), "no box moves from " + pstr(lam) + "|" + pstr(lbar));
      for (auto& [p2, eig] : eigs) {
        Rat want;
        if (p2.minus == b.minus) {
          int r = 0;
          for (int i = 1; i <= p2.plus.length(); ++i)
            if (p2.plus.part(i) != b.plus.part(i)) {
              r = i;
              break;
            }
          require(r > 0, "box eigenvalue key changes no row");
          want = Rat(b.plus.part(r) + 1 - r);
        } else {
          int r = 0;
          for (int i = 1; i <= b.minus.length(); ++i)
            if (p2.minus.part(i) != b.minus.part(i)) {
              r = i;
              break;
            }
          require(r > 0, "box eigenvalue key changes no row");
          want = Rat(-(b.minus.part(r) - r) - 4);
        }
        require(eig == want, "box eigenvalue is not the added-box content at " + pstr(lam) + "|" +
                                 pstr(lbar));
        ++boxes;
      }
    }
  require(boxes > 0, "no box eigenvalues checked");
}

// ----- criterion 8 -----

std::pair<int, std::string> run_cli(const std::string& args, bool merge_stderr) {
  std::string cmd = std::string(STABREP_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  require(p != nullptr, "popen failed");
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void crit_cli() {
  const std::vector<std::string> cmds = {
      "lr --lambda 2,2 --mu 2,1 --nu 1",
      "skew --outer 3,1 --inner 1",
      "hom-mult --lambda 2,1 --mu 2,1 --nu '|' --n 3",
      "stable-hom --k 1 --l 0 --a 0 --nu '1|1'",
      "stable-hom-osp --k 1 --l 0 --a 0 --nu 2",
      "king --lambda 2 --mu 2 --nu 1,1",
      "verify-stability --series gl --k 1 --l 0 --a 0 --nu '1|1' --n-lo 4 --n-hi 5",
      "mixed-stability --plus 'k=1,l=1,a=0,b=0' --minus 'k=0,l=0' --nu '1|1' --n-lo 4 --n-hi 5",
      "central-char --series gl --triple 'k=1,l=1,gamma='",
      "ck --k 2 --series gl --pair '1|'",
      "char-pair --series gl --k 1 --l 0 --a 0",
      "hc-compat --series gl --k 1 --l 0 --a 0",
      "transpose-check --count 5 --max-size 10 --seed 5",
      "tensor-decompose --series gl --n 3 --hw1 2,1,0 --hw2 1,0,0",
      "annihilator-verify --lemma elementary --variant symV --n 2 --m 2",
      "degree-bound --k 2 --family gl",
      "super-symbol-check --k 1 --family gl",
      "slz-apply --module fock --op f --c 0 --basis ''",
      "slz-verify --family 'A=u:1,0;gamma=' --samples 5 --range 3 --seed 9",
  };
  for (auto& c : cmds) {
    auto first = run_cli(c, false);
    auto second = run_cli(c, false);
    require(first.first == 0, "exit " + std::to_string(first.first) + " from: " + c);
    require(!first.second.empty(), "no output from: " + c);
    require(first.second == second.second, "nondeterministic output from: " + c);
  }

  auto bad = run_cli("lr --lambda 2,x --mu 1 --nu 1", true);
  require(bad.first == 2, "malformed partition did not exit 2");
  require(bad.second.find("x") != std::string::npos, "diagnostic does not name the token");
  auto badseries = run_cli("tensor-decompose --series zz --n 2 --hw1 1,0 --hw2 1,0", true);
  require(badseries.first == 2, "unknown series did not exit 2");
  require(badseries.second.find("zz") != std::string::npos, "diagnostic does not name the series");
  require(run_cli("no-such-command", true).first == 2, "unknown subcommand did not exit 2");
}

}  // namespace

int main() {
  struct Crit {
    int id;
    const char* label;
    double budget;
    std::function<void()> fn;
  };
  const std::vector<Crit> crits = {
      {1, "stable formula vs gl oracle", 60, crit_stable_vs_oracle},
      {2, "finite hom multiplicity theorem", 60, crit_finite_theorem},
      {3, "king multiplicities and osp stability", 60, crit_king},
      {4, "central character identities", 30, crit_central_characters},
      {5, "harish-chandra compatibility", 5, crit_hc_compatibility},
      {6, "annihilator suite", 120, crit_annihilators},
      {7, "sl_Z suite", 60, crit_slz},
      {8, "cli determinism and diagnostics", 10, crit_cli},
  };

  bool all = true;
  for (const auto& c : crits) {
    auto t0 = std::chrono::steady_clock::now();
    std::string fail;
    try {
      c.fn();
    } catch (const std::exception& e) {
      fail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (fail.empty() && secs >= c.budget) fail = "budget exceeded";
    std::printf("criterion %d (%s): %s in %.2f s (budget %.0f s)%s%s\n", c.id, c.label,
                fail.empty() ? "PASS" : "FAIL", secs, c.budget, fail.empty() ? "" : ": ",
                fail.c_str());
    std::fflush(stdout);
    if (!fail.empty()) all = false;
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
