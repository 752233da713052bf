#pragma once

#include <map>
#include <vector>

#include "pf/kneading.hpp"

namespace pf {

// A finite window of the bi-infinite 0/1 pattern of basic points along the
// unstable manifold. left[i] sits at coordinate -(i+1), right[i] at i+1;
// coordinate 0 is the fixed point and carries no mark. 0 marks critical
// (turning) points, 1 marks their forward images. generations g means the
// window is exactly the g-th stage of the inductive construction, whose first
// stage is `1 0 . 1`.
struct FoldingPattern {
  std::vector<int> left;
  std::vector<int> right;
  int generations = 0;

  int value_at(int coord) const;
  friend bool operator==(const FoldingPattern&, const FoldingPattern&) = default;
};

// Space-separated text with '.' standing for the fixed point, outermost left
// mark first: "1 0 . 1". Parsing re-derives generations and validates the
// window via annotate().
std::string format_folding(const FoldingPattern& fp);
FoldingPattern parse_folding(const std::string& text);

struct AnnotatedPosition {
  int coord = 0;   // nonzero; negative marks sit left of the fixed point
  int mark = 0;    // 0 or 1
  Symbol sign = Symbol::PlusMinus;  // Plus/Minus for 1-marks, PlusMinus for 0-marks
  int subscript = 0;                // orbit id i of z_i
  int superscript = 0;              // iterate j of z_i^j; 0 for 0-marks
  int arrow = 0;                    // coordinate of the image point; 0 when outside
  friend bool operator==(const AnnotatedPosition&, const AnnotatedPosition&) = default;
};

// One basic arc of the window: the open gap between two consecutive marks.
// The origin gap spans the fixed point between coordinates -1 and 1 and is
// its own parent.
struct GapInfo {
  int lo = 0;
  int hi = 0;
  Symbol sign = Symbol::Plus;
  Word arc_code;
  int parent = 0;  // gap whose image covers this gap
  int level = 0;   // arc-code length
  friend bool operator==(const GapInfo&, const GapInfo&) = default;
};

struct AnnotatedPattern {
  FoldingPattern fp;
  std::vector<AnnotatedPosition> positions;    // curve order, leftmost first
  std::vector<GapInfo> gaps;                   // creation order; gaps[0] is the origin gap
  std::vector<std::vector<int>> gap_children;  // per gap, inner child first; the
                                               // origin gap's self-cover is implicit
  std::map<int, int> zero_parent_gap;          // 0-mark coordinate -> gap carrying it

  const AnnotatedPosition& at(int coord) const;
  Word turning_arc_code(int zero_coord) const;
};

// Reconstruct the inductive build of the window: assign orbit labels and
// image arrows to every mark, and derive the basic-arc decomposition with
// arc-codes. Fails with MalformedPattern when the window is not a whole
// number of generations of a consistent pattern.
AnnotatedPattern annotate(const FoldingPattern& fp);

// Generate the g-generation window determined by a kneading set. Tail symbols
// drive where new turning points appear; entries are looked up by arc-code as
// turning points arise. InsufficientDepth when a needed tail symbol is not
// stored.
FoldingPattern kneading_to_folding(const KneadingSet& K, int generations);

// Read the kneading set back off a window: arc-codes from the arc carrying
// each turning point, tails by following image arrows. Entries whose tails
// cannot be certified to min_depth are dropped (they belong to the youngest
// generations). The result keeps each entry's full reachable tail.
KneadingSet folding_to_kneading(const FoldingPattern& fp, int min_depth = 1);

struct FoldingDifference {
  enum class Kind { Equal, DifferAt };
  Kind kind = Kind::Equal;
  int generations = 0;  // shared complete generations when Equal
  int coordinate = 0;   // first differing coordinate otherwise

  bool equal() const { return kind == Kind::Equal; }
  friend bool operator==(const FoldingDifference&, const FoldingDifference&) = default;
};

// Compare over the shared extent, scanning coordinates outward from the
// fixed point: +1, -1, +2, -2, ...
FoldingDifference compare_folding(const FoldingPattern& a, const FoldingPattern& b);

}  // namespace pf
