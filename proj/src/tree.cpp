#include "pf/tree.hpp"

#include <algorithm>
#include <sstream>

namespace pf {

namespace {

Symbol flip(Symbol s) { return s == Symbol::Plus ? Symbol::Minus : Symbol::Plus; }

std::map<int, int> parent_map(const PrunedTree& t) {
  std::map<int, int> parent;
  for (const auto& [u, kids] : t.children)
    for (int v : kids) parent[v] = u;
  return parent;
}

struct MarksAndSigns {
  std::vector<TreeMark> marks;
  std::map<int, Symbol> signs;
};

MarksAndSigns compute_marks_and_signs(const PrunedTree& t) {
  const std::map<int, int> parent = parent_map(t);
  MarksAndSigns out;
  for (int row = 0; row < 2 && row <= t.depth; ++row) {
    Symbol cur = Symbol::Plus;
    if (row == 1) {
      out.marks.push_back({1, -1, 0});
      cur = flip(cur);
    }
    for (int l = row; l <= t.depth; l += 2) {
      const std::vector<int>& lv = t.levels[static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < lv.size(); ++i) {
        out.signs[lv[i]] = cur;
        int value = 1;
        if (i + 1 < lv.size()) {
          auto pu = parent.find(lv[i]);
          auto pv = parent.find(lv[i + 1]);
          if (pu != parent.end() && pv != parent.end() && pu->second == pv->second)
            value = 0;
        }
        out.marks.push_back({l, static_cast<int>(i), value});
        if (value == 0) cur = flip(cur);
      }
    }
  }
  return out;
}

}  // namespace

int PrunedTree::level_of(int id) const {
  for (std::size_t l = 0; l < levels.size(); ++l)
    for (int v : levels[l])
      if (v == id) return static_cast<int>(l);
  fail(Errc::InvalidArgument, "vertex " + std::to_string(id) + " not in the tree");
}

void validate(const PrunedTree& t) {
  if (t.levels.empty() || t.levels[0] != std::vector<int>{0})
    fail(Errc::MissingRoot, "level 0 must hold exactly the root vertex 0");
  if (t.depth != static_cast<int>(t.levels.size()) - 1)
    fail(Errc::ShapeViolation, "depth does not match the level count");
  if (!t.root_self_loop)
    fail(Errc::ShapeViolation, "the root must carry its self arrow");
  int even_next = 1, odd_next = -1;
  for (std::size_t l = 0; l < t.levels.size(); ++l) {
    if (t.levels[l].empty()) fail(Errc::ShapeViolation, "empty level");
    for (int id : t.levels[l]) {
      if (l == 0) continue;
      if (l % 2 == 0) {
        if (id != even_next++)
          fail(Errc::ShapeViolation, "even-level ids must continue 1, 2, ...");
      } else {
        if (id != odd_next--)
          fail(Errc::ShapeViolation, "odd-level ids must continue -1, -2, ...");
      }
    }
  }
  for (std::size_t l = 0; l < t.levels.size(); ++l) {
    const bool open_level = static_cast<int>(l) == t.depth;
    std::vector<int> concat;
    for (int id : t.levels[l]) {
      auto it = t.children.find(id);
      if (open_level) {
        if (it != t.children.end())
          fail(Errc::ShapeViolation, "open vertices may not carry children");
        continue;
      }
      if (it == t.children.end())
        fail(Errc::ShapeViolation,
             "vertex " + std::to_string(id) + " lacks its child list");
      if (it->second.empty() || it->second.size() > 2)
        fail(Errc::ShapeViolation, "vertices map onto one or two arcs");
      concat.insert(concat.end(), it->second.begin(), it->second.end());
    }
    if (!open_level && concat != t.levels[l + 1])
      fail(Errc::ShapeViolation, "children do not tile the next level in order");
  }
  if (!t.arc_codes.empty()) {
    for (const auto& lv : t.levels)
      for (int id : lv)
        if (!t.arc_codes.contains(id))
          fail(Errc::ShapeViolation, "missing arc-code for vertex " + std::to_string(id));
    if (!t.arc_codes.at(0).empty())
      fail(Errc::ShapeViolation, "the root arc-code must be empty");
  }
}

PrunedTree folding_to_tree(const FoldingPattern& fp) {
  const AnnotatedPattern ann = annotate(fp);
  PrunedTree t;
  t.depth = ann.fp.generations;
  t.levels.resize(static_cast<std::size_t>(t.depth) + 1);
  // Gaps are stored in creation order, which is planar order within a level.
  std::vector<int> id_of(ann.gaps.size(), 0);
  int even_next = 1, odd_next = -1;
  for (int l = 0; l <= t.depth; ++l) {
    for (std::size_t g = 0; g < ann.gaps.size(); ++g) {
      if (ann.gaps[g].level != l) continue;
      int id;
      if (l == 0)
        id = 0;
      else
        id = (l % 2 == 0) ? even_next++ : odd_next--;
      id_of[g] = id;
      t.levels[static_cast<std::size_t>(l)].push_back(id);
      t.arc_codes[id] = ann.gaps[g].arc_code;
    }
  }
  for (std::size_t g = 0; g < ann.gaps.size(); ++g) {
    if (ann.gaps[g].level == t.depth) continue;  // open vertices
    std::vector<int> kids;
    for (int c : ann.gap_children[g]) kids.push_back(id_of[static_cast<std::size_t>(c)]);
    t.children[id_of[g]] = std::move(kids);
  }
  validate(t);
  return t;
}

NakedTree strip_labels(const PrunedTree& t) {
  validate(t);
  NakedTree shape;
  for (int l = 0; l < t.depth; ++l) {
    std::vector<int> row;
    for (int id : t.levels[static_cast<std::size_t>(l)])
      row.push_back(static_cast<int>(t.children.at(id).size()));
    shape.push_back(std::move(row));
  }
  return shape;
}

PrunedTree relabel_naked_tree(const NakedTree& shape) {
  if (shape.empty() || shape[0].size() != 1)
    fail(Errc::MissingRoot, "the shape must start with the lone root vertex");
  if (shape[0][0] != 1)
    fail(Errc::ShapeViolation, "the root maps onto itself and one further arc");
  PrunedTree t;
  t.depth = static_cast<int>(shape.size());
  t.levels.resize(static_cast<std::size_t>(t.depth) + 1);
  t.levels[0] = {0};
  int even_next = 1, odd_next = -1;
  for (int l = 0; l < t.depth; ++l) {
    const auto& counts = shape[static_cast<std::size_t>(l)];
    const auto& cur = t.levels[static_cast<std::size_t>(l)];
    if (counts.size() != cur.size())
      fail(Errc::ShapeViolation, "arity row does not match the level width");
    auto& next = t.levels[static_cast<std::size_t>(l) + 1];
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (counts[i] < 1 || counts[i] > 2)
        fail(Errc::ShapeViolation, "vertices map onto one or two arcs");
      std::vector<int> kids;
      for (int k = 0; k < counts[i]; ++k) {
        const int id = (l + 1) % 2 == 0 ? even_next++ : odd_next--;
        kids.push_back(id);
        next.push_back(id);
      }
      t.children[cur[i]] = std::move(kids);
    }
  }
  const MarksAndSigns ms = compute_marks_and_signs(t);
  t.arc_codes[0] = {};
  for (int l = 0; l < t.depth; ++l)
    for (int id : t.levels[static_cast<std::size_t>(l)])
      for (int kid : t.children.at(id)) {
        Word code = t.arc_codes.at(id);
        code.push_back(ms.signs.at(kid));
        t.arc_codes[kid] = std::move(code);
      }
  validate(t);
  return t;
}

MarkedTree mark_tree(const PrunedTree& t) {
  validate(t);
  MarksAndSigns ms = compute_marks_and_signs(t);
  return {t, std::move(ms.marks), std::move(ms.signs)};
}

KneadingSet tree_to_kneading(const MarkedTree& mt, int min_depth) {
  const PrunedTree& t = mt.tree;
  validate(t);
  if (t.arc_codes.empty())
    fail(Errc::InvalidArgument, "tree carries no arc-codes");
  std::map<int, std::size_t> pos;  // vertex -> index within its level
  for (const auto& lv : t.levels)
    for (std::size_t i = 0; i < lv.size(); ++i) pos[lv[i]] = i;
  const std::map<int, int> parent = parent_map(t);

  // Walk down from the mark after vertex u, collecting the sign of the vertex
  // left of the mark at each step; the next mark sits after u's last child.
  auto read_tail = [&](int u) {
    Word tail;
    while (true) {
      tail.push_back(mt.vertex_signs.at(u));
      auto it = t.children.find(u);
      if (it == t.children.end()) break;
      u = it->second.back();
    }
    return tail;
  };

  std::vector<KneadingSequence> seqs;
  {
    KneadingSequence central;
    central.tail = read_tail(0);
    seqs.push_back(std::move(central));
  }
  for (const TreeMark& m : mt.marks) {
    if (m.value != 0 || m.after < 0) continue;  // leading level-1 mark is the root's
    const std::vector<int>& lv = t.levels[static_cast<std::size_t>(m.level)];
    const int u = lv[static_cast<std::size_t>(m.after)];
    KneadingSequence seq;
    seq.arc_code = t.arc_codes.at(parent.at(u));
    auto it = t.children.find(u);
    if (it != t.children.end()) seq.tail = read_tail(it->second.back());
    seqs.push_back(std::move(seq));
  }
  std::erase_if(seqs, [&](const KneadingSequence& s) { return s.depth() < min_depth; });
  KneadingSet out = recover_indices(std::move(seqs));
  validate(out);
  return out;
}

FoldingPattern tree_to_folding(const PrunedTree& t) {
  validate(t);
  return kneading_to_folding(tree_to_kneading(mark_tree(t), 0), t.depth);
}

std::string tree_to_graphviz(const MarkedTree& mt) {
  const PrunedTree& t = mt.tree;
  std::ostringstream out;
  auto node = [](int id) { return "v" + std::string(id < 0 ? "m" : "p") +
                                  std::to_string(id < 0 ? -id : id); };
  out << "digraph pruned_tree {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t l = 0; l < t.levels.size(); ++l) {
    out << "  { rank=same;";
    for (int id : t.levels[l]) out << ' ' << node(id) << ';';
    out << " }\n";
  }
  for (const auto& lv : t.levels)
    for (int id : lv) {
      out << "  " << node(id) << " [label=\"" << id;
      auto s = mt.vertex_signs.find(id);
      if (s != mt.vertex_signs.end()) out << ' ' << symbol_char(s->second);
      auto c = t.arc_codes.find(id);
      if (c != t.arc_codes.end())
        out << "\\n" << (c->second.empty() ? "()" : format_word(c->second));
      out << "\"];\n";
    }
  if (t.root_self_loop) out << "  " << node(0) << " -> " << node(0) << ";\n";
  for (const auto& [u, kids] : t.children)
    for (int v : kids) out << "  " << node(u) << " -> " << node(v) << ";\n";
  out << "  // marks per row, walk order\n";
  for (const TreeMark& m : mt.marks)
    out << "  // mark level=" << m.level << " after=" << m.after
        << " value=" << m.value << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace pf
