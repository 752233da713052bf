#include "pf/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pf {

Point phi(const ManifoldMap& mm, double t) {
  if (mm.chart_radius <= 0 || mm.mu == 0)
    fail(Errc::InvalidArgument, "manifold parametrization not initialized");
  double s = t;
  int k = 0;
  while (std::abs(s) > mm.chart_radius) {
    s /= mm.mu;
    ++k;
  }
  Point p = mm.fixed + s * mm.v + (s * s) * mm.w2;
  for (int i = 0; i < k; ++i) p = mm.fwd(p);
  return p;
}

const Marker& ObservedWindow::at(int coord) const {
  if (coord < 0 && -coord <= static_cast<int>(left_marks.size()))
    return left_marks[static_cast<std::size_t>(-coord - 1)];
  if (coord > 0 && coord <= static_cast<int>(right_marks.size()))
    return right_marks[static_cast<std::size_t>(coord - 1)];
  fail(Errc::InsufficientWindow, "no basic point at coordinate " + std::to_string(coord));
}

ObservedWindow observe_window(const ManifoldMap& mm, const BasicPointGrid& grid,
                              const SideFn& side, int generations) {
  if (generations < 1) fail(Errc::InvalidArgument, "generations must be positive");
  if (grid.left.empty())
    fail(Errc::NoCandidates, "no turning point left of the fixed point");
  for (std::size_t k = 0; k < grid.left.size(); ++k)
    if (grid.left[k] >= 0 || (k > 0 && grid.left[k] >= grid.left[k - 1]))
      fail(Errc::InvalidArgument, "left turning parameters must decrease below 0");
  for (std::size_t k = 0; k < grid.right.size(); ++k)
    if (grid.right[k] <= 0 || (k > 0 && grid.right[k] <= grid.right[k - 1]))
      fail(Errc::InvalidArgument, "right turning parameters must increase above 0");

  const double t0 = grid.left.front();
  double eg = t0;
  for (int j = 0; j < generations; ++j) eg *= mm.mu;
  const double eh = eg * mm.mu;
  ObservedWindow ow;
  ow.lo = std::min(eg, eh);
  ow.hi = std::max(eg, eh);

  std::vector<Marker> all;
  const double reach = std::max(-ow.lo, ow.hi);
  auto add_orbit = [&](double tc, int i) {
    if (tc >= ow.lo && tc <= ow.hi) all.push_back({tc, i, 0});
    double t = tc * mm.mu;
    for (int j = 1; std::abs(t) <= reach; ++j, t *= mm.mu)
      if (t >= ow.lo && t <= ow.hi) all.push_back({t, i, j});
  };
  for (std::size_t k = 0; k < grid.left.size(); ++k)
    add_orbit(grid.left[k], static_cast<int>(k));
  for (std::size_t k = 0; k < grid.right.size(); ++k)
    add_orbit(grid.right[k], -1 - static_cast<int>(k));
  std::sort(all.begin(), all.end(), [](const Marker& a, const Marker& b) { return a.t < b.t; });
  for (std::size_t k = 0; k + 1 < all.size(); ++k)
    if (all[k].t == all[k + 1].t)
      fail(Errc::MalformedPattern, "coincident basic points on the manifold");

  for (const Marker& m : all) {
    if (m.t < 0)
      ow.left_marks.push_back(m);
    else
      ow.right_marks.push_back(m);
  }
  std::reverse(ow.left_marks.begin(), ow.left_marks.end());
  for (const Marker& m : ow.left_marks) ow.fp.left.push_back(m.j == 0 ? 0 : 1);
  for (const Marker& m : ow.right_marks) ow.fp.right.push_back(m.j == 0 ? 0 : 1);
  ow.fp.generations = generations;

  // The combinatorial reconstruction must label every basic point exactly as
  // the geometry does; this catches missed turning points and bad windows.
  const AnnotatedPattern ann = annotate(ow.fp);
  if (ann.fp.generations != generations)
    fail(Errc::MalformedPattern, "observed window is not a whole generation count");
  for (int c = -static_cast<int>(ow.left_marks.size());
       c <= static_cast<int>(ow.right_marks.size()); ++c) {
    if (c == 0) continue;
    const Marker& m = ow.at(c);
    const AnnotatedPosition& p = ann.at(c);
    if (p.subscript != m.i || p.superscript != m.j)
      fail(Errc::MalformedPattern,
           "orbit labels disagree with the reconstruction at coordinate " +
               std::to_string(c));
    if (p.mark == 1) {
      const Symbol s = side(phi(mm, m.t));
      if (s != Symbol::PlusMinus && s != p.sign)
        fail(Errc::MalformedPattern,
             "image sides disagree with the reconstruction at coordinate " +
                 std::to_string(c));
    }
  }
  return ow;
}

std::vector<ArcSpan> arc_spans(const AnnotatedPattern& ann, const ObservedWindow& ow) {
  std::vector<ArcSpan> spans;
  for (const GapInfo& g : ann.gaps)
    spans.push_back({ow.at(g.lo).t, ow.at(g.hi).t, g.arc_code});
  std::sort(spans.begin(), spans.end(),
            [](const ArcSpan& a, const ArcSpan& b) { return a.lo < b.lo; });
  return spans;
}

namespace {

const GapInfo& gap_containing(const AnnotatedPattern& ann, const ObservedWindow& ow,
                              double t) {
  if (t <= ow.lo || t >= ow.hi)
    fail(Errc::InvalidArgument, "parameter outside the observed window");
  // Basic-point parameters in curve order.
  std::vector<std::pair<double, int>> pts;
  for (int c = static_cast<int>(ow.left_marks.size()); c >= 1; --c)
    pts.push_back({ow.at(-c).t, -c});
  for (int c = 1; c <= static_cast<int>(ow.right_marks.size()); ++c)
    pts.push_back({ow.at(c).t, c});
  auto it = std::upper_bound(pts.begin(), pts.end(), std::pair<double, int>{t, 0});
  if (it == pts.begin() || it == pts.end())
    fail(Errc::InvalidArgument, "parameter outside the observed window");
  if (std::prev(it)->first == t)
    fail(Errc::InvalidArgument, "parameter lies on a basic point");
  const int c1 = std::prev(it)->second;
  const int c2 = it->second;
  for (const GapInfo& g : ann.gaps)
    if (g.lo == c1 && g.hi == c2) return g;
  fail(Errc::MalformedPattern, "no basic arc between consecutive basic points");
}

}  // namespace

Window itinerary_at(const ManifoldMap& mm, const AnnotatedPattern& ann,
                    const ObservedWindow& ow, const SideFn& side, double t,
                    int fwd_depth) {
  if (fwd_depth < 1) fail(Errc::InvalidArgument, "fwd_depth must be positive");
  const GapInfo& gap = gap_containing(ann, ow, t);
  const Word& w = gap.arc_code;
  const Symbol expected = w.empty() ? Symbol::Plus : w.back();
  const Symbol seen = side(phi(mm, t));
  if (seen != Symbol::PlusMinus && seen != expected)
    fail(Errc::MalformedPattern, "arc-code disagrees with the point side");
  Window out;
  out.left_tail_all_plus = true;
  if (!w.empty()) out.left.assign(w.begin(), w.end() - 1);
  out.right.push_back(expected);
  double tk = t;
  for (int k = 1; k < fwd_depth; ++k) {
    tk *= mm.mu;
    out.right.push_back(side(phi(mm, tk)));
  }
  out.normalize();
  return out;
}

KneadingSet kneading_from_window(const ManifoldMap& mm, const AnnotatedPattern& ann,
                                 const ObservedWindow& ow, const SideFn& side,
                                 int depth) {
  if (depth < 1) fail(Errc::InvalidArgument, "depth must be positive");
  KneadingSet out;
  for (const auto& [coord, gidx] : ann.zero_parent_gap) {
    KneadingEntry e;
    e.index = ann.at(coord).subscript;
    e.seq.arc_code = ann.gaps[static_cast<std::size_t>(gidx)].arc_code;
    double t = ow.at(coord).t * mm.mu;
    for (int j = 1; j <= depth; ++j, t *= mm.mu) {
      Symbol s = side(phi(mm, t));
      // The first image of a turning point sits on the positive branch by
      // convention even when geometry reports it within the locus band.
      if (j == 1 && s == Symbol::PlusMinus) s = Symbol::Plus;
      e.seq.tail.push_back(s);
    }
    out.entries.push_back(std::move(e));
  }
  out.sort_entries();
  validate(out);
  return out;
}

WuPolyline assemble_polyline(const ManifoldMap& mm, std::vector<double> vertex_params,
                             const std::vector<Marker>& markers, double seg_tol,
                             long long vertex_budget, bool heuristic) {
  if (seg_tol <= 0) fail(Errc::InvalidArgument, "seg_tol must be positive");
  vertex_params.push_back(0);
  for (const Marker& m : markers) vertex_params.push_back(m.t);
  std::sort(vertex_params.begin(), vertex_params.end());
  vertex_params.erase(std::unique(vertex_params.begin(), vertex_params.end()),
                      vertex_params.end());

  WuPolyline poly;
  poly.seg_tol = seg_tol;
  poly.heuristic = heuristic;
  long long budget = vertex_budget;
  auto emit = [&](double t, Point p) {
    if (--budget < 0) fail(Errc::BudgetExceeded, "polyline vertex budget exceeded");
    poly.params.push_back(t);
    poly.pts.push_back(p);
  };
  // Refine each chord to seg_tol; for a piecewise affine map the vertices
  // already sit at the kinks, so refinement stays on the curve.
  auto refine = [&](auto&& self, double t1, Point p1, double t2, Point p2) -> void {
    if (dist(p1, p2) <= seg_tol) {
      emit(t2, p2);
      return;
    }
    const double tm = 0.5 * (t1 + t2);
    if (tm == t1 || tm == t2) {
      emit(t2, p2);
      return;
    }
    const Point pm = phi(mm, tm);
    self(self, t1, p1, tm, pm);
    self(self, tm, pm, t2, p2);
  };
  Point prev = phi(mm, vertex_params.front());
  emit(vertex_params.front(), prev);
  for (std::size_t k = 1; k < vertex_params.size(); ++k) {
    const Point next = phi(mm, vertex_params[k]);
    refine(refine, vertex_params[k - 1], prev, vertex_params[k], next);
    prev = next;
  }

  poly.arclength.resize(poly.pts.size(), 0);
  for (std::size_t k = 1; k < poly.pts.size(); ++k)
    poly.arclength[k] = poly.arclength[k - 1] + dist(poly.pts[k - 1], poly.pts[k]);
  const auto at0 = std::lower_bound(poly.params.begin(), poly.params.end(), 0.0);
  poly.origin = static_cast<std::size_t>(at0 - poly.params.begin());

  std::vector<Marker> sorted = markers;
  std::sort(sorted.begin(), sorted.end(),
            [](const Marker& a, const Marker& b) { return a.t < b.t; });
  for (const Marker& m : sorted) {
    const auto it = std::lower_bound(poly.params.begin(), poly.params.end(), m.t);
    poly.markers.push_back(
        {static_cast<std::size_t>(it - poly.params.begin()), m.t, m.i, m.j});
  }
  return poly;
}

}  // namespace pf
