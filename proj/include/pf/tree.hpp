#pragma once

#include <map>
#include <string>
#include <vector>

#include "pf/folding.hpp"

namespace pf {

// Planar leveled transition tree of basic arcs. Vertex ids follow the arc
// numbering: 0 is the root arc, positive ids sit at even levels and negative
// ids at odd levels, with moduli increasing along each level and continuing
// across the levels of the same parity. The root carries an extra self arrow
// which is kept out of the children map. Vertices of the deepest level are
// open: their child sets are not determined by the window.
struct PrunedTree {
  std::vector<std::vector<int>> levels;      // levels[n] in planar order
  std::map<int, std::vector<int>> children;  // absent for open vertices
  bool root_self_loop = true;
  int depth = 0;
  std::map<int, Word> arc_codes;

  int level_of(int id) const;
  bool is_open(int id) const { return !children.contains(id); }
  friend bool operator==(const PrunedTree&, const PrunedTree&) = default;
};

void validate(const PrunedTree& t);

// The pure planar shape: per level below the open one, the child count of
// each vertex in order. The root's self arrow is implicit.
using NakedTree = std::vector<std::vector<int>>;

PrunedTree folding_to_tree(const FoldingPattern& fp);
NakedTree strip_labels(const PrunedTree& t);

// Rebuild ids, arc-codes and signs from the shape alone.
PrunedTree relabel_naked_tree(const NakedTree& shape);

// A mark between horizontally consecutive vertices of a parity row. The mark
// after the last vertex of level n doubles as the mark before the first
// vertex of level n+2. after == -1 is the single leading mark placed left of
// the level-1 vertex.
struct TreeMark {
  int level = 0;
  int after = 0;
  int value = 0;
  friend bool operator==(const TreeMark&, const TreeMark&) = default;
};

struct MarkedTree {
  PrunedTree tree;
  std::vector<TreeMark> marks;  // row 0 first, then row 1, walk order
  std::map<int, Symbol> vertex_signs;
};

// Marks are 0 exactly between sibling vertices (plus the leading level-1
// mark); vertex signs start Plus on each row and flip when a 0 mark is
// passed.
MarkedTree mark_tree(const PrunedTree& t);

// Read kneading data off the marked tree: each between-sibling 0 mark is a
// turning point whose arc-code lives two steps up (the siblings' parent), and
// tails are read by stepping to the mark after the last child, collecting the
// sign of the vertex left of the mark at each step. Indices are recovered
// from the arc-codes.
KneadingSet tree_to_kneading(const MarkedTree& mt, int min_depth = 1);

FoldingPattern tree_to_folding(const PrunedTree& t);

std::string tree_to_graphviz(const MarkedTree& mt);

}  // namespace pf
