// Acceptance gate: one line per criterion, PASS or FAIL, with the elapsed
// time. Tolerances, sample counts and time budgets are pinned here. The
// process exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "pf/folding.hpp"
#include "pf/henon.hpp"
#include "pf/kneading.hpp"
#include "pf/lozi.hpp"
#include "pf/serialize.hpp"
#include "pf/symbolic.hpp"
#include "pf/tree.hpp"

#include "oracles.hpp"
#include "reference_data.hpp"
#include "regression_constants.hpp"

using namespace pf;

namespace {

int g_failures = 0;

void criterion(int id, const char* label, double budget_s,
               const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool pass = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (pass && budget_s > 0 && secs > budget_s) {
    pass = false;
    detail = "over the time budget of " + std::to_string(budget_s) + "s";
  }
  std::printf("%s %2d  %s  [%.2fs]%s%s\n", pass ? "PASS" : "FAIL", id, label, secs,
              detail.empty() ? "" : "  -- ", detail.c_str());
  if (!pass) ++g_failures;
}

Word window_word(const Window& w) {
  Word p = w.left;
  p.insert(p.end(), w.right.begin(), w.right.end());
  return p;
}

// Strip leading Plus and run the one-sided admissibility check; the all-Plus
// word is admissible by convention.
bool wu_ok(const Window& w, const KneadingSet& K, int depth) {
  const Word p = window_word(w);
  std::size_t s = 0;
  while (s < p.size() && p[s] == Symbol::Plus) ++s;
  if (s == p.size()) return true;
  return is_wu_admissible(WordView(p).subspan(s), K, depth).admissible();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PRUNEFRONT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int st = pclose(pipe);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// ---------------------------------------------------------------- criteria

bool c1_order_axioms(std::string& why) {
  // Binary words of every length up to 10, compared exhaustively in both
  // orders against the independent oracle.
  std::vector<Word> bin;
  for (int len = 1; len <= 10; ++len)
    for (int m = 0; m < (1 << len); ++m) {
      Word w(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        w[static_cast<std::size_t>(i)] = (m >> i) & 1 ? Symbol::Plus : Symbol::Minus;
      bin.push_back(std::move(w));
    }
  for (const Word& u : bin)
    for (const Word& v : bin) {
      const Ordering3 got = plex_compare(u, v, 10);
      if (got != oracle::plex(u, v, 10)) {
        why = "oracle mismatch at " + format_word(u) + " vs " + format_word(v);
        return false;
      }
      const Ordering3 rev = plex_compare(v, u, 10);
      const bool anti = (got.is_less() && rev.is_greater()) ||
                        (got.is_greater() && rev.is_less()) ||
                        (got.is_equal() && rev.is_equal() && got.depth == rev.depth);
      if (!anti) {
        why = "antisymmetry fails at " + format_word(u) + " vs " + format_word(v);
        return false;
      }
    }

  // Ternary words (locus symbols included) up to length 6 against the oracle.
  std::vector<Word> ter;
  for (int len = 1; len <= 6; ++len) {
    int total = 1;
    for (int i = 0; i < len; ++i) total *= 3;
    for (int m = 0; m < total; ++m) {
      Word w;
      int x = m;
      for (int i = 0; i < len; ++i) {
        w.push_back(static_cast<Symbol>(x % 3));
        x /= 3;
      }
      ter.push_back(std::move(w));
    }
  }
  for (const Word& u : ter)
    for (const Word& v : ter)
      if (plex_compare(u, v, 6) != oracle::plex(u, v, 6)) {
        why = "ternary oracle mismatch at " + format_word(u) + " vs " + format_word(v);
        return false;
      }

  // Transitivity of the strict order: exhaustive on binary words up to
  // length 5, randomized on ternary words of length 10.
  std::vector<Word> small;
  for (int len = 1; len <= 5; ++len)
    for (int m = 0; m < (1 << len); ++m) {
      Word w(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        w[static_cast<std::size_t>(i)] = (m >> i) & 1 ? Symbol::Plus : Symbol::Minus;
      small.push_back(std::move(w));
    }
  const std::size_t n = small.size();
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      less[i][j] = plex_compare(small[i], small[j], 5).is_less();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!less[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (less[j][k] && !less[i][k]) {
          why = "transitivity fails at " + format_word(small[i]) + ", " +
                format_word(small[j]) + ", " + format_word(small[k]);
          return false;
        }
    }
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> pick(0, 2);
  auto random_word = [&] {
    Word w(10);
    for (Symbol& s : w) s = static_cast<Symbol>(pick(rng));
    return w;
  };
  for (int it = 0; it < 100000; ++it) {
    const Word u = random_word(), v = random_word(), w = random_word();
    if (plex_compare(u, v, 10).is_less() && plex_compare(v, w, 10).is_less() &&
        !plex_compare(u, w, 10).is_less()) {
      why = "random transitivity fails";
      return false;
    }
  }
  return true;
}

bool c2_reference_window(std::string& why) {
  const FoldingPattern fp = parse_folding(refdata::kWindowText);
  const AnnotatedPattern ann = annotate(fp);
  if (ann.positions.size() != refdata::positions().size()) {
    why = "position count " + std::to_string(ann.positions.size());
    return false;
  }
  for (const refdata::Position& row : refdata::positions()) {
    const AnnotatedPosition& ap = ann.at(row.coord);
    if (ap.mark != row.mark || ap.subscript != row.subscript ||
        ap.superscript != row.superscript || ap.arrow != row.arrow ||
        ap.sign != symbol_from_char(row.sign)) {
      why = "annotation differs at coordinate " + std::to_string(row.coord);
      return false;
    }
  }

  const PrunedTree t = folding_to_tree(fp);
  if (t.levels != refdata::tree_levels()) {
    why = "tree levels differ";
    return false;
  }
  if (t.children != refdata::tree_children()) {
    why = "tree children differ";
    return false;
  }
  if (t.arc_codes.size() != refdata::arc_codes().size()) {
    why = "arc code count differs";
    return false;
  }
  for (const auto& [id, code] : refdata::arc_codes())
    if (t.arc_codes.at(id) != parse_word(code)) {
      why = "arc code differs at vertex " + std::to_string(id);
      return false;
    }

  const MarkedTree mt = mark_tree(t);
  if (mt.marks != refdata::tree_marks()) {
    why = "tree marks differ";
    return false;
  }
  if (mt.vertex_signs.size() != refdata::vertex_signs().size()) {
    why = "vertex sign count differs";
    return false;
  }
  for (const auto& [id, ch] : refdata::vertex_signs())
    if (mt.vertex_signs.at(id) != symbol_from_char(ch)) {
      why = "vertex sign differs at " + std::to_string(id);
      return false;
    }
  return true;
}

bool c3_conversions_commute(std::string& why) {
  LoziEngine eng(LoziParams{1.8, 0.3});
  const FoldingPattern f6 = eng.folding(6);
  const KneadingSet K = folding_to_kneading(f6, 1);

  if (!(kneading_to_folding(K, 6) == f6)) {
    why = "kneading does not unfold back to the window";
    return false;
  }
  const KneadingSet K2 = folding_to_kneading(kneading_to_folding(K, 6), 1);
  if (!compare_kneading_sets(K, K2, 20).equal()) {
    why = "folding round trip changes the kneading set";
    return false;
  }

  const PrunedTree t = folding_to_tree(f6);
  if (!(tree_to_folding(t) == f6)) {
    why = "tree does not unfold back to the window";
    return false;
  }
  const KneadingSet Kt = tree_to_kneading(mark_tree(t), 1);
  if (!compare_kneading_sets(K, Kt, 20).equal()) {
    why = "tree route disagrees with the folding route";
    return false;
  }

  const AnnotatedPattern ann = annotate(f6);
  const KneadingSet Ke =
      eng.kneading_set(static_cast<int>(ann.zero_parent_gap.size()), 20);
  if (!compare_kneading_sets(K, Ke, 20).equal()) {
    why = "window kneading disagrees with the engine set";
    return false;
  }
  if (!(kneading_to_folding(Ke, 6) == f6)) {
    why = "engine set does not unfold to the window";
    return false;
  }
  return true;
}

bool c4_itineraries_admissible(std::string& why) {
  LoziEngine eng(LoziParams{1.8, 0.3}, 1e-9);
  const KneadingSet K = eng.kneading_set(40, 20);
  const ObservedWindow ow = eng.window(6);
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> U(ow.lo, ow.hi);
  int excluded = 0, included = 0, bad = 0;
  for (int s = 0; s < 1000; ++s) {
    const double t = U(rng);
    Point q = phi(eng.map(), t);
    bool dead = false;
    for (int j = 0; j < 20 && !dead; ++j) {
      if (eng.side(q) == Symbol::PlusMinus) dead = true;
      q = lozi_apply(eng.params(), q);
    }
    if (dead) {
      ++excluded;
      continue;
    }
    ++included;
    if (!wu_ok(eng.itinerary(t, 6, 20), K, 20)) ++bad;
  }
  why = std::to_string(included) + " checked, " + std::to_string(excluded) +
        " in the switching band, " + std::to_string(bad) + " inadmissible";
  const bool pass = bad == 0 && included >= 900;
  if (pass) why.clear();
  return pass;
}

bool c5_order_matches_parameter(std::string& why) {
  LoziEngine eng(LoziParams{1.8, 0.3});
  const ObservedWindow ow = eng.window(6);
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> U(ow.lo, ow.hi);
  int resolved = 0, bad = 0, attempts = 0;
  while (resolved < 1000 && attempts < 5000) {
    ++attempts;
    const double t1 = U(rng), t2 = U(rng);
    Window w1, w2;
    try {
      w1 = eng.itinerary(t1, 6, 20);
      w2 = eng.itinerary(t2, 6, 20);
    } catch (const Error&) {
      continue;
    }
    const Ordering3 r = gplex_compare(w1, w2);
    if (r.is_equal()) continue;
    ++resolved;
    if (r.is_less() != (t1 < t2)) ++bad;
  }
  why = std::to_string(resolved) + " resolved, " + std::to_string(bad) + " misordered";
  const bool pass = resolved == 1000 && bad == 0;
  if (pass) why.clear();
  return pass;
}

bool c6_tails_dominate_leaf(std::string& why) {
  LoziEngine eng(LoziParams{1.8, 0.3});
  const KneadingSet K = eng.kneading_set(20, 20);
  const ObservedWindow ow = eng.window(12);
  std::vector<double> division = {0.0};
  for (const Marker& m : ow.left_marks) division.push_back(m.t);
  for (const Marker& m : ow.right_marks) division.push_back(m.t);
  std::sort(division.begin(), division.end());
  const double mu = eng.map().mu;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> F(0.0, 1.0);
  for (const KneadingEntry& e : K.entries) {
    const double target = mu * eng.turning_param(e.index);
    const auto it = std::lower_bound(division.begin(), division.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - division.begin());
    if (idx > 0 &&
        (idx == division.size() ||
         std::abs(division[idx - 1] - target) < std::abs(division[idx] - target)))
      --idx;
    if (std::abs(division[idx] - target) > 1e-9 * (1 + std::abs(target))) {
      why = "image of turning point " + std::to_string(e.index) +
            " is not a division point";
      return false;
    }
    if (idx == 0 || idx + 1 >= division.size()) {
      why = "leaf of turning point " + std::to_string(e.index) +
            " is not interior to the window";
      return false;
    }
    const double lo = division[idx - 1], hi = division[idx + 1];
    int valid = 0;
    for (int s = 0; s < 50; ++s) {
      const double t = lo + (hi - lo) * F(rng);
      if (t == lo || t == hi || t == target) continue;
      Word tail;
      Point q = phi(eng.map(), t);
      bool dead = false;
      for (int j = 0; j < 20; ++j) {
        const Symbol sd = eng.side(q);
        if (sd == Symbol::PlusMinus) {
          dead = true;
          break;
        }
        tail.push_back(sd);
        q = lozi_apply(eng.params(), q);
      }
      if (dead) continue;
      ++valid;
      if (plex_compare(tail, e.seq.tail, 20).is_greater()) {
        why = "sampled tail exceeds the kneading tail of entry " +
              std::to_string(e.index);
        return false;
      }
    }
    if (valid < 40) {
      why = "too few usable samples on the leaf of entry " + std::to_string(e.index);
      return false;
    }
  }
  return true;
}

bool c7_region_diameters(std::string& why) {
  LoziEngine eng(LoziParams{1.8, 0.3});
  auto diameter_at = [&eng](int radius) {
    Window w;
    w.left = Word(static_cast<std::size_t>(radius), Symbol::Plus);
    w.right = Word(static_cast<std::size_t>(radius) + 1, Symbol::Plus);
    return union_diameter(eng.region(w));
  };
  double prev = std::numeric_limits<double>::infinity();
  for (int r = 2; r <= 12; ++r) {
    const double d = diameter_at(r);
    if (!(d < prev)) {
      why = "diameter is not strictly decreasing at radius " + std::to_string(r);
      return false;
    }
    prev = d;
  }
  const double d14 = diameter_at(14);
  if (!(d14 < 1e-2)) {
    why = "radius-14 diameter " + format_double(d14);
    return false;
  }
  if (std::abs(d14 - regression::kAllPlusDiameterR14) >
      1e-12 * regression::kAllPlusDiameterR14) {
    why = "radius-14 diameter drifted to " + format_double(d14);
    return false;
  }
  return true;
}

bool c8_parameters_separate(std::string& why) {
  LoziEngine a(LoziParams{1.8, 0.3});
  LoziEngine b(LoziParams{1.7, 0.35});
  const FoldingDifference d = compare_folding(a.folding(6), b.folding(6));
  if (d.equal()) {
    why = "windows agree through six generations";
    return false;
  }
  if (d.coordinate != regression::kFoldingDifferCoordinate) {
    why = "first differing coordinate " + std::to_string(d.coordinate);
    return false;
  }
  return true;
}

bool c9_henon_stability(std::string& why) {
  const HenonParams hp{1.9, 0.025};
  HenonOptions o10, o15;
  o10.j_max = 10;
  o15.j_max = 15;
  HenonEngine h10(hp, o10), h15(hp, o15);
  for (int r = 0; r < 6; ++r) {
    h10.grow_extent_round();
    h15.grow_extent_round();
  }
  const auto& c10 = h10.candidates();
  const auto& c15 = h15.candidates();
  if (c10.empty() || c10.size() != c15.size()) {
    why = "candidate counts " + std::to_string(c10.size()) + " vs " +
          std::to_string(c15.size());
    return false;
  }
  double worst = 0;
  for (std::size_t i = 0; i < c10.size(); ++i)
    worst = std::max(worst, dist(c10[i].p, c15[i].p));
  if (!(worst < 1e-3)) {
    why = "turning points moved by " + format_double(worst);
    return false;
  }

  const KneadingSet K = h10.kneading_set(15, 15);
  const ObservedWindow ow = h10.window(6);
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> U(ow.lo, ow.hi);
  int done = 0, attempts = 0, good = 0;
  while (done < 1000 && attempts < 5000) {
    ++attempts;
    Window w;
    try {
      w = h10.itinerary(U(rng), 6, 15);
    } catch (const Error&) {
      continue;
    }
    ++done;
    if (wu_ok(w, K, 15)) ++good;
  }
  why = std::to_string(good) + "/" + std::to_string(done) +
        " itineraries admissible, displacement " + format_double(worst);
  const bool pass = done == 1000 && good >= 990;
  if (pass) why.clear();
  return pass;
}

bool c10_cli_deterministic(std::string& why) {
  const std::vector<std::string> commands = {
      "kneading --map lozi --a 1.8 --b 0.3 --count 8 --depth 12",
      "tree --map lozi --a 1.8 --b 0.3 --generations 5 --format dot",
      "manifold --map lozi --a 1.8 --b 0.3 --target 3 --seg-tol 0.05",
  };
  for (const std::string& cmd : commands) {
    const RunResult r1 = run_cli(cmd);
    const RunResult r2 = run_cli(cmd);
    if (r1.code != 0 || r2.code != 0) {
      why = "exit " + std::to_string(r1.code) + "/" + std::to_string(r2.code) +
            " for: " + cmd;
      return false;
    }
    if (r1.out.empty() || r1.out != r2.out) {
      why = "outputs differ for: " + cmd;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "parity order matches the oracle and satisfies the order axioms", 10,
            c1_order_axioms);
  criterion(2, "reference window annotation, tree and marks are symbol-exact", 1,
            c2_reference_window);
  criterion(3, "kneading, folding and tree conversions commute at depth 20", 5,
            c3_conversions_commute);
  criterion(4, "sampled manifold itineraries pass the admissibility check", 30,
            c4_itineraries_admissible);
  criterion(5, "symbolic window order matches the manifold parameter order", 0,
            c5_order_matches_parameter);
  criterion(6, "kneading tails dominate all tails sampled on their leaf", 0,
            c6_tails_dominate_leaf);
  criterion(7, "all-plus window regions shrink to the frozen diameter", 0,
            c7_region_diameters);
  criterion(8, "nearby parameter pairs separate within six generations", 10,
            c8_parameters_separate);
  criterion(9, "henon detection is depth-stable and self-admissible", 60,
            c9_henon_stability);
  criterion(10, "cli outputs are byte-identical across repeated runs", 0,
            c10_cli_deterministic);
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
