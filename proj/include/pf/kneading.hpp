#pragma once

#include <optional>
#include <vector>

#include "pf/symbolic.hpp"

namespace pf {

// One kneading sequence, stored as the pair (arc-code, tail). The arc-code
// names the basic arc carrying the preimage of the turning point; the tail
// starts at the turning point itself, so tail[j] is the side of its (j+1)-th
// image under the map. The central sequence is the one with an empty
// arc-code. Nonempty arc-codes start with Minus; tails start with Plus.
struct KneadingSequence {
  Word arc_code;
  Word tail;

  int depth() const { return static_cast<int>(tail.size()); }
  friend bool operator==(const KneadingSequence&, const KneadingSequence&) = default;
};

void validate(const KneadingSequence& ks);

struct KneadingEntry {
  int index = 0;
  KneadingSequence seq;
  friend bool operator==(const KneadingEntry&, const KneadingEntry&) = default;
};

// A set of kneading sequences keyed by the integer turning-point index:
// 0 for the central one, positive and negative for the two parity classes.
// Entries are kept sorted by ascending index. heuristic is set by engines
// whose critical locus is itself approximate.
struct KneadingSet {
  std::vector<KneadingEntry> entries;
  bool heuristic = false;

  const KneadingEntry* find(int index) const;
  void sort_entries();
  friend bool operator==(const KneadingSet&, const KneadingSet&) = default;
};

void validate(const KneadingSet& ks);

// Relative position of two basic arcs named by their arc-codes, described for
// u against v. Arcs of equal code length compare by plex: the smaller word
// lies farther from the fixed point. Same parity with different lengths puts
// the longer code farther out. Opposite parities sit on opposite branches and
// do not compare.
enum class ArcOrder { FartherFromX, CloserToX, SameArc, IncomparableParity };

ArcOrder basic_arc_order(WordView u, WordView v);

// Assign turning-point indices from arc-codes alone: the empty code gets 0,
// even-length codes get 1, 2, ... walking away from the fixed point, and
// odd-length codes get -1, -2, ... the same way. Indices are ranks within the
// given set's parity classes; they agree with the absolute numbering exactly
// when the set is a contiguous truncation of the full kneading data.
KneadingSet recover_indices(std::vector<KneadingSequence> sequences);

struct Verdict {
  enum class Kind { AdmissibleUpTo, Rejected, SearchBudgetExceeded };
  Kind kind = Kind::AdmissibleUpTo;
  int depth = 0;             // certified depth when admissible
  int witness_index = 0;     // rejecting kneading entry
  int witness_position = 0;  // length of the matched arc-code prefix

  bool admissible() const { return kind == Kind::AdmissibleUpTo; }
  static Verdict admissible_up_to(int d) { return {Kind::AdmissibleUpTo, d, 0, 0}; }
  static Verdict rejected(int index, int position) {
    return {Kind::Rejected, 0, index, position};
  }
  static Verdict budget() { return {Kind::SearchBudgetExceeded, 0, 0, 0}; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Unstable-manifold admissibility of a one-sided word p with p[0] == Minus,
// read as the sequence (all-Plus tail)p[0]p[1]...: for every kneading entry
// whose nonempty arc-code is a prefix p[0..m] of p, the shifted word starting
// at p[m+2] must not exceed that entry's tail in the parity order. PlusMinus
// symbols in p are resolved both ways and the word passes if some resolution
// does. depth limits both the prefix scan and the tail comparisons; the
// verdict's certified depth accounts for entries with short tails.
Verdict is_wu_admissible(WordView p, const KneadingSet& K, int depth);

struct AdmissibleOptions {
  int prelude_budget = -1;               // max prelude length; -1 means the requested n
  long long candidate_budget = 1 << 20;  // cap on examined completions
};

// Finite-depth admissibility of a two-sided window: search for a completion
// that agrees with w on coordinates -n..n-1 and whose left side closes with
// an all-Plus tail after a prelude of bounded length, such that the completed
// word passes is_wu_admissible at matching depth. Rejected verdicts carry the
// witness of the last failing completion.
Verdict is_admissible(const Window& w, const KneadingSet& K, int n,
                      const AdmissibleOptions& opt = {});

struct SetDifference {
  enum class Kind { EqualUpToDepth, MissingEntry, ArcCodeMismatch, TailMismatch };
  Kind kind = Kind::EqualUpToDepth;
  int depth = 0;     // certified depth for EqualUpToDepth
  int index = 0;     // entry index at the first difference
  int position = 0;  // differing tail coordinate for TailMismatch

  bool equal() const { return kind == Kind::EqualUpToDepth; }
  friend bool operator==(const SetDifference&, const SetDifference&) = default;
};

// Entrywise comparison over the shared index range, scanning indices
// outward from 0 (0, -1, 1, -2, 2, ...). Tails compare up to depth or the
// shorter stored tail; the certified depth is the smallest compared depth.
SetDifference compare_kneading_sets(const KneadingSet& a, const KneadingSet& b,
                                    int depth);

}  // namespace pf
