#include "pf/lozi.hpp"

#include <algorithm>
#include <cmath>

namespace pf {

Point lozi_apply(const LoziParams& p, const Point& q) {
  return {1 + q.y - p.a * std::abs(q.x), p.b * q.x};
}

Point lozi_apply_inverse(const LoziParams& p, const Point& q) {
  const double x = q.y / p.b;
  return {x, q.x - 1 + p.a * std::abs(x)};
}

bool in_lozi_domain(const LoziParams& p) {
  return p.b > 0 && p.a * std::sqrt(2.0) - p.b > 2 && 2 * p.a + p.b < 4;
}

LoziFixedPoints lozi_fixed_points(const LoziParams& p) {
  const double dx = 1 + p.a - p.b;
  const double dy = 1 - p.a - p.b;
  if (dx == 0 || dy == 0) fail(Errc::InvalidArgument, "degenerate fixed points");
  return {{1 / dx, p.b / dx}, {1 / dy, p.b / dy}};
}

LoziEngine::LoziEngine(LoziParams p, double locus_eps)
    : p_(p), locus_eps_(locus_eps) {
  if (!in_lozi_domain(p))
    fail(Errc::NotMisiurewicz, "parameters outside the admissible Lozi domain");
  if (locus_eps < 0) fail(Errc::InvalidArgument, "locus_eps must be nonnegative");
  const Point X = lozi_fixed_points(p).X;
  const double mu = (-p.a - std::sqrt(p.a * p.a + 4 * p.b)) / 2;
  if (!(std::abs(mu) > 1))
    fail(Errc::UnstableEigenvalueMissing, "no expanding eigenvalue at the fixed point");
  Point v{1, p.a + mu};
  v = (1 / norm(v)) * v;
  mm_.fwd = [p](const Point& q) { return lozi_apply(p, q); };
  mm_.fixed = X;
  mm_.mu = mu;
  mm_.v = v;
  mm_.w2 = {0, 0};
  t0_ = -X.x / v.x;
  mm_.chart_radius = -t0_;
  verts_ = {t0_, mu * t0_};
  crossings_ = {t0_};
  rebuild_grid();
}

Symbol LoziEngine::side(const Point& q) const {
  if (std::abs(q.x) <= locus_eps_) return Symbol::PlusMinus;
  return q.x > 0 ? Symbol::Plus : Symbol::Minus;
}

SideFn LoziEngine::side_fn() const {
  return [this](const Point& q) { return side(q); };
}

void LoziEngine::rebuild_grid() {
  grid_.left.clear();
  grid_.right.clear();
  for (auto it = crossings_.rbegin(); it != crossings_.rend(); ++it)
    if (*it < 0) grid_.left.push_back(*it);
  for (double t : crossings_)
    if (t > 0) grid_.right.push_back(t);
}

void LoziEngine::grow_rounds(int rounds) {
  if (rounds > 64) fail(Errc::BudgetExceeded, "generation growth cap exceeded");
  while (rounds_ < rounds) {
    std::vector<double> nv;
    nv.reserve(verts_.size() * 2);
    for (double t : verts_) nv.push_back(t * mm_.mu);
    nv.insert(nv.end(), verts_.begin(), verts_.end());
    std::sort(nv.begin(), nv.end());
    nv.erase(std::unique(nv.begin(), nv.end()), nv.end());
    verts_ = std::move(nv);

    // x is affine in the parameter between consecutive kinks, so each sign
    // change pins one crossing exactly. Known crossings read as exact zeros.
    std::vector<double> xs(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i)
      xs[i] = std::binary_search(crossings_.begin(), crossings_.end(), verts_[i])
                  ? 0.0
                  : phi(mm_, verts_[i]).x;
    std::vector<double> found;
    for (std::size_t i = 0; i + 1 < verts_.size(); ++i)
      if (xs[i] * xs[i + 1] < 0)
        found.push_back(verts_[i] - xs[i] * (verts_[i + 1] - verts_[i]) /
                                        (xs[i + 1] - xs[i]));
    for (double t : found) {
      crossings_.insert(
          std::upper_bound(crossings_.begin(), crossings_.end(), t), t);
      verts_.insert(std::upper_bound(verts_.begin(), verts_.end(), t), t);
    }
    ++rounds_;
  }
  rebuild_grid();
}

double LoziEngine::turning_param(int index) {
  const std::size_t need = index >= 0 ? static_cast<std::size_t>(index) + 1
                                      : static_cast<std::size_t>(-index);
  const auto& arr = index >= 0 ? grid_.left : grid_.right;
  while (arr.size() < need) grow_rounds(rounds_ + 1);
  return index >= 0 ? grid_.left[static_cast<std::size_t>(index)]
                    : grid_.right[static_cast<std::size_t>(-index - 1)];
}

ObservedWindow LoziEngine::window(int generations) {
  if (generations < 1) fail(Errc::InvalidArgument, "generations must be positive");
  grow_rounds(generations);
  return observe_window(mm_, grid_, side_fn(), generations);
}

FoldingPattern LoziEngine::folding(int generations) {
  return window(generations).fp;
}

KneadingSet LoziEngine::kneading_set(int count, int depth) {
  if (count < 1 || depth < 1)
    fail(Errc::InvalidArgument, "count and depth must be positive");
  const std::size_t need_left = static_cast<std::size_t>(count + 1) / 2;
  const std::size_t need_right = static_cast<std::size_t>(count) / 2;
  while (grid_.left.size() < need_left || grid_.right.size() < need_right)
    grow_rounds(rounds_ + 1);
  const ObservedWindow ow = window(rounds_);
  const AnnotatedPattern ann = annotate(ow.fp);
  KneadingSet K = kneading_from_window(mm_, ann, ow, side_fn(), depth);
  // Keep the entries nearest the fixed point: 0, -1, 1, -2, 2, ...
  auto rank = [](int i) { return i == 0 ? 0 : (i < 0 ? -2 * i - 1 : 2 * i); };
  std::sort(K.entries.begin(), K.entries.end(),
            [&](const KneadingEntry& x, const KneadingEntry& y) {
              return rank(x.index) < rank(y.index);
            });
  if (K.entries.size() < static_cast<std::size_t>(count))
    fail(Errc::NoCandidates, "window holds fewer turning points than requested");
  K.entries.resize(static_cast<std::size_t>(count));
  K.sort_entries();
  validate(K);
  return K;
}

Window LoziEngine::itinerary(double t, int generations, int fwd_depth) {
  const ObservedWindow ow = window(generations);
  const AnnotatedPattern ann = annotate(ow.fp);
  return itinerary_at(mm_, ann, ow, side_fn(), t, fwd_depth);
}

WuPolyline LoziEngine::grow_wu(double target_arclength, double seg_tol,
                               long long vertex_budget) {
  if (target_arclength <= 0 || seg_tol <= 0)
    fail(Errc::InvalidArgument, "target arclength and seg_tol must be positive");
  grow_rounds(std::max(rounds_, 1));
  auto chord_length = [&] {
    double s = 0;
    Point prev = phi(mm_, verts_.front());
    for (std::size_t i = 1; i < verts_.size(); ++i) {
      const Point next = phi(mm_, verts_[i]);
      s += dist(prev, next);
      prev = next;
    }
    return s;
  };
  while (chord_length() < target_arclength) grow_rounds(rounds_ + 1);
  const ObservedWindow ow = window(rounds_);
  std::vector<Marker> markers = ow.left_marks;
  markers.insert(markers.end(), ow.right_marks.begin(), ow.right_marks.end());
  return assemble_polyline(mm_, verts_, markers, seg_tol, vertex_budget, false);
}

BoundingBox LoziEngine::attractor_box() {
  if (!box_) {
    // A fresh 8-generation cascade keeps the box independent of how far this
    // engine has grown.
    LoziEngine probe(p_, locus_eps_);
    probe.grow_rounds(8);
    const Point first = phi(probe.mm_, probe.verts_.front());
    BoundingBox bb{first.x, first.x, first.y, first.y};
    for (double t : probe.verts_) bb.expand(phi(probe.mm_, t));
    bb.pad(0.02);
    box_ = bb;
  }
  return *box_;
}

std::vector<ConvexPolygon> LoziEngine::region(const Window& w) {
  const ConvexPolygon base = box_polygon(attractor_box());
  const Affine branch_plus{{-p_.a, 1, p_.b, 0}, {1, 0}};
  const Affine branch_minus{{p_.a, 1, p_.b, 0}, {1, 0}};
  constexpr std::size_t kMaxPieces = 4096;

  auto branches = [](Symbol s) -> std::vector<Symbol> {
    if (s == Symbol::PlusMinus) return {Symbol::Plus, Symbol::Minus};
    return {s};
  };
  auto clip_branch = [&](ConvexPolygon poly, Symbol br, Symbol sym) {
    poly = br == Symbol::Plus ? clip_half_plane(poly, -1, 0, 0)
                              : clip_half_plane(poly, 1, 0, 0);
    if (sym == Symbol::PlusMinus) {
      poly = clip_half_plane(poly, 1, 0, locus_eps_);
      poly = clip_half_plane(poly, -1, 0, locus_eps_);
    }
    return poly;
  };

  // Forward constraints: coordinate k's point lies on branch right[k] and its
  // image satisfies the remaining constraints.
  std::vector<ConvexPolygon> fwd{base};
  for (int k = static_cast<int>(w.right.size()) - 1; k >= 0; --k) {
    const Symbol sym = w.right[static_cast<std::size_t>(k)];
    std::vector<ConvexPolygon> next;
    for (Symbol br : branches(sym)) {
      const Affine& A = br == Symbol::Plus ? branch_plus : branch_minus;
      const Affine Ainv = A.inverse();
      for (const ConvexPolygon& P : fwd) {
        ConvexPolygon Q = clip_branch(map_polygon(Ainv, P), br, sym);
        Q = intersect_convex(Q, base);
        if (!Q.empty()) next.push_back(std::move(Q));
      }
    }
    if (next.size() > kMaxPieces)
      fail(Errc::WindowTooDeep, "resolved branch count exceeded");
    fwd = std::move(next);
  }

  // Backward constraints: push the outermost stored preimage forward, one
  // branch application per coordinate.
  std::vector<ConvexPolygon> bwd{base};
  const int m = static_cast<int>(w.left.size());
  for (int c = -m; c <= -1; ++c) {
    const Symbol sym = w.left[static_cast<std::size_t>(c + m)];
    std::vector<ConvexPolygon> next;
    for (Symbol br : branches(sym)) {
      const Affine& A = br == Symbol::Plus ? branch_plus : branch_minus;
      for (const ConvexPolygon& P : bwd) {
        ConvexPolygon Q = map_polygon(A, clip_branch(P, br, sym));
        Q = intersect_convex(Q, base);
        if (!Q.empty()) next.push_back(std::move(Q));
      }
    }
    if (next.size() > kMaxPieces)
      fail(Errc::WindowTooDeep, "resolved branch count exceeded");
    bwd = std::move(next);
  }

  std::vector<ConvexPolygon> out;
  for (const ConvexPolygon& P : fwd)
    for (const ConvexPolygon& Q : bwd) {
      ConvexPolygon I = intersect_convex(P, Q);
      if (!I.empty()) out.push_back(std::move(I));
    }
  return out;
}

}  // namespace pf
