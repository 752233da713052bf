#include "pf/folding.hpp"

#include <algorithm>
#include <sstream>

namespace pf {

namespace {

Symbol flip(Symbol s) { return s == Symbol::Plus ? Symbol::Minus : Symbol::Plus; }

// Shared driver for annotate() and kneading_to_folding(). The window is
// rebuilt stage by stage: stage n maps the marks added by stage n-1 across
// the fixed point, landing them outward on the target side. In annotate mode
// the landed marks must reproduce the given window; in generation mode they
// are created, with tail symbols deciding where new turning points appear.
struct Walk {
  const FoldingPattern* given = nullptr;
  const KneadingSet* kset = nullptr;
  int want_generations = 0;

  std::map<int, AnnotatedPosition> marks;
  std::vector<GapInfo> gaps;
  std::vector<std::vector<int>> children;
  std::map<std::pair<int, int>, int> gap_by_span;
  std::map<int, int> zero_parent;
  std::map<int, Word> orbit_code;
  std::map<int, Symbol> struct_sign;
  std::map<Word, const KneadingEntry*> code_entry;
  int L = 0;
  int R = 0;
  int left_done = 2;
  int right_done = 1;
  int left_next_zero = 1;
  int right_next_zero = -1;
  int generations = 1;

  bool annotating() const { return given != nullptr; }

  void check_given_shape() {
    L = static_cast<int>(given->left.size());
    R = static_cast<int>(given->right.size());
    if (L < 2 || R < 1)
      fail(Errc::MalformedPattern, "window smaller than one generation");
    for (int v : given->left)
      if (v != 0 && v != 1) fail(Errc::MalformedPattern, "marks must be 0 or 1");
    for (int v : given->right)
      if (v != 0 && v != 1) fail(Errc::MalformedPattern, "marks must be 0 or 1");
    if (given->value_at(-1) != 0 || given->value_at(1) != 1 ||
        given->value_at(-2) != 1)
      fail(Errc::MalformedPattern, "window must start from the seed `1 0 . 1`");
    if (given->value_at(-L) != 1 || given->value_at(R) != 1)
      fail(Errc::MalformedPattern, "window must end with image marks");
    for (int i = 0; i + 1 < L; ++i)
      if (given->left[i] == 0 && given->left[i + 1] == 0)
        fail(Errc::MalformedPattern, "adjacent turning marks");
    for (int i = 0; i + 1 < R; ++i)
      if (given->right[i] == 0 && given->right[i + 1] == 0)
        fail(Errc::MalformedPattern, "adjacent turning marks");
    // Sides propagate outward from the fixed point and flip at turning marks.
    Symbol cur = Symbol::Plus;
    for (int c = 1; c <= R; ++c) {
      struct_sign[c] = given->value_at(c) == 1 ? cur : Symbol::PlusMinus;
      if (given->value_at(c) == 0) cur = flip(cur);
    }
    cur = Symbol::Plus;
    for (int c = -1; c >= -L; --c) {
      struct_sign[c] = given->value_at(c) == 1 ? cur : Symbol::PlusMinus;
      if (given->value_at(c) == 0) cur = flip(cur);
    }
  }

  bool in_window(int c) const { return c >= -L && c <= R && c != 0; }

  int add_gap(int a, int b, Symbol sign, const Word& parent_code, int parent) {
    GapInfo g;
    g.lo = std::min(a, b);
    g.hi = std::max(a, b);
    g.sign = sign;
    g.arc_code = parent_code;
    g.arc_code.push_back(sign);
    g.parent = parent;
    g.level = static_cast<int>(g.arc_code.size());
    gaps.push_back(std::move(g));
    children.emplace_back();
    const int idx = static_cast<int>(gaps.size()) - 1;
    gap_by_span[{gaps[static_cast<std::size_t>(idx)].lo,
                 gaps[static_cast<std::size_t>(idx)].hi}] = idx;
    return idx;
  }

  void seed() {
    marks[-1] = {-1, 0, Symbol::PlusMinus, 0, 0, 1};
    marks[1] = {1, 1, Symbol::Plus, 0, 1, -2};
    marks[-2] = {-2, 1, Symbol::Minus, 0, 2, 0};
    GapInfo origin;
    origin.lo = -1;
    origin.hi = 1;
    origin.sign = Symbol::Plus;
    origin.parent = 0;
    origin.level = 0;
    gaps.push_back(origin);
    children.emplace_back();
    gap_by_span[{-1, 1}] = 0;
    const int g1 = add_gap(-2, -1, Symbol::Minus, {}, 0);
    children[0] = {g1};
    zero_parent[-1] = 0;
    orbit_code[0] = {};
    if (kset)
      for (const KneadingEntry& e : kset->entries) code_entry[e.seq.arc_code] = &e;
  }

  Symbol image_sign_from_tails(const AnnotatedPosition& src, int stage_n) {
    if (src.mark == 0) return Symbol::Plus;  // first image of a turning point
    auto it = code_entry.find(orbit_code.at(src.subscript));
    if (it == code_entry.end())
      fail(Errc::InsufficientDepth,
           "no kneading entry for turning point " + std::to_string(src.subscript) +
               " needed at generation " + std::to_string(stage_n + 1));
    const Word& tail = it->second->seq.tail;
    if (static_cast<int>(tail.size()) <= src.superscript)
      fail(Errc::InsufficientDepth,
           "kneading tail for turning point " + std::to_string(src.subscript) +
               " shorter than " + std::to_string(src.superscript + 1));
    return tail[static_cast<std::size_t>(src.superscript)];
  }

  void stage(int n, std::vector<int>& sources) {
    const bool to_right = (n % 2 == 1);
    const int dir = to_right ? 1 : -1;
    if (annotating() && (to_right ? right_done >= R : left_done >= L))
      fail(Errc::MalformedPattern, "window does not split into whole generations");
    const int s_prev0 = sources.front() + dir;
    int t_prev = marks.at(s_prev0).arrow;
    Symbol frontier = marks.at(t_prev).sign;
    int s_prev = s_prev0;
    int cursor = t_prev + dir;
    std::vector<int> additions;

    for (int s : sources) {
      const AnnotatedPosition src = marks.at(s);
      const int gsrc = gap_by_span.at({std::min(s_prev, s), std::max(s_prev, s)});
      int zc = 0;
      Symbol img_sign;
      if (annotating()) {
        if (!in_window(cursor))
          fail(Errc::MalformedPattern, "generation runs past the window end");
        if (given->value_at(cursor) == 0) {
          zc = cursor;
          cursor += dir;
          if (!in_window(cursor))
            fail(Errc::MalformedPattern, "generation runs past the window end");
        }
        img_sign = struct_sign.at(cursor);
      } else {
        img_sign = image_sign_from_tails(src, n);
        if (img_sign != frontier) {
          zc = cursor;
          cursor += dir;
        }
      }
      if (zc != 0) {
        const int zid = to_right ? right_next_zero-- : left_next_zero++;
        marks[zc] = {zc, 0, Symbol::PlusMinus, zid, 0, 0};
        zero_parent[zc] = gsrc;
        orbit_code[zid] = gaps[static_cast<std::size_t>(gsrc)].arc_code;
        if (kset) {
          auto it = code_entry.find(orbit_code[zid]);
          if (it != code_entry.end() && it->second->index != zid)
            fail(Errc::InvalidArgument,
                 "kneading entry indices do not match the construction");
        }
        additions.push_back(zc);
      }
      const int tc = cursor;
      marks[tc] = {tc, 1, img_sign, src.subscript,
                   src.mark == 0 ? 1 : src.superscript + 1, 0};
      marks.at(s).arrow = tc;
      additions.push_back(tc);

      const Word parent_code = gaps[static_cast<std::size_t>(gsrc)].arc_code;
      std::vector<int> kids;
      if (zc != 0) {
        kids.push_back(add_gap(t_prev, zc, marks.at(t_prev).sign, parent_code, gsrc));
        kids.push_back(add_gap(zc, tc, img_sign, parent_code, gsrc));
      } else {
        kids.push_back(add_gap(t_prev, tc, img_sign, parent_code, gsrc));
      }
      children[static_cast<std::size_t>(gsrc)] = std::move(kids);

      t_prev = tc;
      frontier = img_sign;
      s_prev = s;
      cursor = tc + dir;
    }

    if (to_right)
      right_done = t_prev;
    else
      left_done = -t_prev;
    sources = std::move(additions);
  }

  void run() {
    seed();
    std::vector<int> sources = {-2};
    if (annotating()) {
      int n = 1;
      while (right_done < R || left_done < L) {
        stage(n, sources);
        ++n;
      }
      generations = n;
    } else {
      for (int n = 1; n < want_generations; ++n) stage(n, sources);
      generations = want_generations;
    }
  }

  AnnotatedPattern finish() {
    AnnotatedPattern out;
    if (annotating()) {
      out.fp = *given;
    } else {
      int maxl = 0, maxr = 0;
      for (auto& [c, m] : marks) {
        (void)m;
        maxl = std::max(maxl, -c);
        maxr = std::max(maxr, c);
      }
      out.fp.left.assign(static_cast<std::size_t>(maxl), 0);
      out.fp.right.assign(static_cast<std::size_t>(maxr), 0);
      for (auto& [c, m] : marks) {
        if (c < 0)
          out.fp.left[static_cast<std::size_t>(-c - 1)] = m.mark;
        else
          out.fp.right[static_cast<std::size_t>(c - 1)] = m.mark;
      }
    }
    out.fp.generations = generations;
    for (auto& [c, m] : marks) {
      (void)c;
      out.positions.push_back(m);
    }
    out.gaps = std::move(gaps);
    out.gap_children = std::move(children);
    out.zero_parent_gap = std::move(zero_parent);
    return out;
  }
};

}  // namespace

int FoldingPattern::value_at(int coord) const {
  if (coord == 0) fail(Errc::InvalidArgument, "coordinate 0 is the fixed point");
  if (coord > 0) {
    if (coord > static_cast<int>(right.size()))
      fail(Errc::InsufficientWindow, "coordinate beyond the right extent");
    return right[static_cast<std::size_t>(coord - 1)];
  }
  if (-coord > static_cast<int>(left.size()))
    fail(Errc::InsufficientWindow, "coordinate beyond the left extent");
  return left[static_cast<std::size_t>(-coord - 1)];
}

const AnnotatedPosition& AnnotatedPattern::at(int coord) const {
  const int l = static_cast<int>(fp.left.size());
  const int idx = coord < 0 ? coord + l : l + coord - 1;
  if (coord == 0 || idx < 0 || idx >= static_cast<int>(positions.size()))
    fail(Errc::InsufficientWindow, "no mark at coordinate " + std::to_string(coord));
  return positions[static_cast<std::size_t>(idx)];
}

Word AnnotatedPattern::turning_arc_code(int zero_coord) const {
  auto it = zero_parent_gap.find(zero_coord);
  if (it == zero_parent_gap.end())
    fail(Errc::InvalidArgument,
         "no turning mark at coordinate " + std::to_string(zero_coord));
  return gaps[static_cast<std::size_t>(it->second)].arc_code;
}

AnnotatedPattern annotate(const FoldingPattern& fp) {
  Walk w;
  w.given = &fp;
  w.check_given_shape();
  w.run();
  return w.finish();
}

FoldingPattern kneading_to_folding(const KneadingSet& K, int generations) {
  if (generations < 1) fail(Errc::InvalidArgument, "generations must be positive");
  validate(K);
  Walk w;
  w.kset = &K;
  w.want_generations = generations;
  w.run();
  return w.finish().fp;
}

KneadingSet folding_to_kneading(const FoldingPattern& fp, int min_depth) {
  const AnnotatedPattern ann = annotate(fp);
  KneadingSet out;
  for (const auto& [coord, gidx] : ann.zero_parent_gap) {
    const AnnotatedPosition& z = ann.at(coord);
    KneadingSequence seq;
    seq.arc_code = ann.gaps[static_cast<std::size_t>(gidx)].arc_code;
    for (int c = z.arrow; c != 0; c = ann.at(c).arrow)
      seq.tail.push_back(ann.at(c).sign);
    if (seq.depth() >= min_depth) out.entries.push_back({z.subscript, std::move(seq)});
  }
  out.sort_entries();
  validate(out);
  return out;
}

std::string format_folding(const FoldingPattern& fp) {
  std::string out;
  for (std::size_t i = fp.left.size(); i-- > 0;) {
    out += std::to_string(fp.left[i]);
    out += ' ';
  }
  out += '.';
  for (int v : fp.right) {
    out += ' ';
    out += std::to_string(v);
  }
  return out;
}

FoldingPattern parse_folding(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<int> before, after;
  bool seen_dot = false;
  while (in >> tok) {
    if (tok == ".") {
      if (seen_dot) fail(Errc::ParseError, "more than one '.' in pattern text");
      seen_dot = true;
    } else if (tok == "0" || tok == "1") {
      (seen_dot ? after : before).push_back(tok == "1" ? 1 : 0);
    } else {
      fail(Errc::ParseError, "unexpected token '" + tok + "' in pattern text");
    }
  }
  if (!seen_dot) fail(Errc::ParseError, "pattern text lacks the '.' fixed point");
  FoldingPattern fp;
  fp.left.assign(before.rbegin(), before.rend());
  fp.right = std::move(after);
  fp.generations = annotate(fp).fp.generations;
  return fp;
}

FoldingDifference compare_folding(const FoldingPattern& a, const FoldingPattern& b) {
  const int minr = static_cast<int>(std::min(a.right.size(), b.right.size()));
  const int minl = static_cast<int>(std::min(a.left.size(), b.left.size()));
  for (int d = 1; d <= std::max(minr, minl); ++d) {
    if (d <= minr && a.right[static_cast<std::size_t>(d - 1)] !=
                         b.right[static_cast<std::size_t>(d - 1)])
      return {FoldingDifference::Kind::DifferAt, 0, d};
    if (d <= minl && a.left[static_cast<std::size_t>(d - 1)] !=
                         b.left[static_cast<std::size_t>(d - 1)])
      return {FoldingDifference::Kind::DifferAt, 0, -d};
  }
  return {FoldingDifference::Kind::Equal,
          std::min(a.generations, b.generations), 0};
}

}  // namespace pf
