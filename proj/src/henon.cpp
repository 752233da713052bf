#include "pf/henon.hpp"

#include <algorithm>
#include <cmath>

namespace pf {

Point henon_apply(const HenonParams& p, const Point& q) {
  return {1 + q.y - p.a * q.x * q.x, p.b * q.x};
}

Mat2 henon_jacobian(const HenonParams& p, const Point& q) {
  return {-2 * p.a * q.x, 1, p.b, 0};
}

HenonEngine::HenonEngine(HenonParams p, HenonOptions opt) : p_(p), opt_(opt) {
  if (p.a <= 0 || p.b <= 0)
    fail(Errc::InvalidArgument, "map parameters must be positive");
  if (opt.locus_eps < 0 || opt.seg_tol <= 0 || opt.j_max < 1)
    fail(Errc::InvalidArgument, "bad engine options");
  const double c = 1 - p.b;
  const double xx = (-c + std::sqrt(c * c + 4 * p.a)) / (2 * p.a);
  const Point X{xx, p.b * xx};
  const double h = p.a * xx;
  const double lam = -h - std::sqrt(h * h + p.b);
  if (!(std::abs(lam) > 1))
    fail(Errc::UnstableEigenvalueMissing, "no expanding eigenvalue at the fixed point");
  Point v{1, 2 * h + lam};
  v = (1 / norm(v)) * v;
  // Second-order chart coefficient from the invariance F(phi(s)) = phi(lam s):
  // (lam^2 I - DF) w2 = q with q the quadratic part of F along v.
  const Mat2 M{lam * lam + 2 * h, -1, -p.b, lam * lam};
  const Point q{-p.a * v.x * v.x, 0};
  const Point w2 = M.inverse().apply(q);
  mm_.fwd = [p](const Point& z) { return henon_apply(p, z); };
  mm_.fixed = X;
  mm_.mu = lam;
  mm_.v = v;
  mm_.w2 = w2;
  mm_.chart_radius = 1e-5;
  lo_ = -mm_.chart_radius;
  hi_ = mm_.chart_radius;
  while (grid_.left.empty() || grid_.right.empty()) grow_round();
}

void HenonEngine::grow_round() {
  if (rounds_ >= 64) fail(Errc::BudgetExceeded, "extent growth cap exceeded");
  const double lo = mm_.mu * hi_;
  const double hi = mm_.mu * lo_;
  lo_ = lo;
  hi_ = hi;
  ++rounds_;
  rebuild();
}

void HenonEngine::ensure_reach(double reach) {
  while (-lo_ < reach || hi_ < reach) grow_round();
}

void HenonEngine::rebuild() {
  merge_candidates(detect_critical_points(opt_.j_max, opt_.seg_tol));
  grid_.left.clear();
  grid_.right.clear();
  for (auto it = cands_.rbegin(); it != cands_.rend(); ++it)
    if (it->t < 0) grid_.left.push_back(it->t);
  for (const CriticalPoint& c : cands_)
    if (c.t > 0) grid_.right.push_back(c.t);

  locus_.clear();
  for (const CriticalPoint& c : cands_) locus_.push_back(c.p);
  std::sort(locus_.begin(), locus_.end(),
            [](const Point& a, const Point& b) { return a.y < b.y; });
  for (std::size_t i = 0; i + 1 < locus_.size(); ++i)
    if (locus_[i].y == locus_[i + 1].y)
      fail(Errc::OrderingAmbiguous, "critical locus is not a graph over y");
  if (!locus_.empty()) {
    const double px = [&] {
      const double y = mm_.fixed.y;
      if (y <= locus_.front().y) return locus_.front().x;
      if (y >= locus_.back().y) return locus_.back().x;
      std::size_t i = 0;
      while (locus_[i + 1].y < y) ++i;
      const double f = (y - locus_[i].y) / (locus_[i + 1].y - locus_[i].y);
      return locus_[i].x + f * (locus_[i + 1].x - locus_[i].x);
    }();
    if (std::abs(mm_.fixed.x - px) <= opt_.locus_eps)
      fail(Errc::MalformedPattern, "fixed point sits on the switching band");
    plus_right_ = mm_.fixed.x > px;
  }
}

Symbol HenonEngine::side(const Point& q) const {
  if (locus_.empty())
    fail(Errc::NoCandidates, "critical locus not detected yet");
  double lx;
  if (q.y <= locus_.front().y) {
    lx = locus_.front().x;
  } else if (q.y >= locus_.back().y) {
    lx = locus_.back().x;
  } else {
    std::size_t i = 0;
    while (locus_[i + 1].y < q.y) ++i;
    const double f = (q.y - locus_[i].y) / (locus_[i + 1].y - locus_[i].y);
    lx = locus_[i].x + f * (locus_[i + 1].x - locus_[i].x);
  }
  double dx = q.x - lx;
  if (!plus_right_) dx = -dx;
  if (std::abs(dx) <= opt_.locus_eps) return Symbol::PlusMinus;
  return dx > 0 ? Symbol::Plus : Symbol::Minus;
}

SideFn HenonEngine::side_fn() const {
  return [this](const Point& q) { return side(q); };
}

// Unit tangent of the manifold at parameter t, from the chart derivative
// pushed through the jacobian chain with renormalization.
Point HenonEngine::tangent_at(double t) const {
  double s = t;
  int k = 0;
  while (std::abs(s) > mm_.chart_radius) {
    s /= mm_.mu;
    ++k;
  }
  Point x = mm_.fixed + s * mm_.v + (s * s) * mm_.w2;
  Point w = mm_.v + (2 * s) * mm_.w2;
  w = (1 / norm(w)) * w;
  for (int i = 0; i < k; ++i) {
    w = henon_jacobian(p_, x).apply(w);
    const double nw = norm(w);
    if (nw == 0) fail(Errc::MalformedPattern, "degenerate tangent on the manifold");
    w = (1 / nw) * w;
    x = henon_apply(p_, x);
  }
  return w;
}

std::vector<CriticalPoint> HenonEngine::detect_critical_points(int j_max,
                                                               double seg_tol) {
  if (j_max < 1 || seg_tol <= 0) fail(Errc::InvalidArgument, "bad detection settings");
  const WuPolyline poly =
      assemble_polyline(mm_, {lo_, hi_}, {}, seg_tol, opt_.vertex_budget, true);
  const std::size_t n = poly.pts.size();
  if (n < 3) return {};

  // Average tangent-contraction exponent over the forward orbit. Scoring is
  // capped at 8 steps: deeper averages dilute the contracting prefix until
  // the log(b)/2 threshold falls below what double precision can certify.
  const int j_score = std::min(j_max, 8);
  auto score_of = [&](Point x, Point w, int steps) {
    double s = 0;
    for (int j = 0; j < steps; ++j) {
      w = henon_jacobian(p_, x).apply(w);
      const double nw = norm(w);
      if (nw == 0) return -1e9;
      s += std::log(nw);
      w = (1 / nw) * w;
      x = henon_apply(p_, x);
    }
    return s / steps;
  };
  auto score_at = [&](double t) {
    return score_of(phi(mm_, t), tangent_at(t), j_score);
  };

  // A turning point folds the curve: after enough pushes the two edges around
  // it run anti-parallel, which brackets the fold at any sampling resolution.
  // The push depth is capped so pushed edges stay local to the attractor.
  const int j_push = std::min(
      j_max, std::max(1, static_cast<int>(std::log(0.2 / seg_tol) /
                                          std::log(std::abs(mm_.mu)))));
  std::vector<Point> push(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point x = poly.pts[k];
    for (int j = 0; j < j_push; ++j) x = henon_apply(p_, x);
    push[k] = x;
  }

  // Every point of a turning orbit is a tangency, so a detected fold may be a
  // forward or backward image of the turning point proper. Promote each hit
  // to the orbit representative nearest the switching region.
  auto promote = [&](double t) {
    double best_t = t;
    double best_x = std::abs(phi(mm_, t).x);
    for (int dir = 0; dir < 2; ++dir) {
      double tk = t;
      for (int k = 0; k < 12; ++k) {
        tk = dir == 0 ? tk * mm_.mu : tk / mm_.mu;
        if (std::abs(tk) > 1e8) break;
        const double x = std::abs(phi(mm_, tk).x);
        if (x < best_x) {
          best_x = x;
          best_t = tk;
        }
      }
    }
    return best_t;
  };

  // One fold can reverse several consecutive pushed edges, so group reversal
  // indices into runs and refine one bracket per run.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const Point e1 = push[k + 1] - push[k];
    const Point e2 = push[k + 2] - push[k + 1];
    if (norm(e1) == 0 || norm(e2) == 0) continue;
    if (e1.x * e2.x + e1.y * e2.y >= 0) continue;
    if (!runs.empty() && runs.back().second + 1 >= k)
      runs.back().second = k;
    else
      runs.emplace_back(k, k);
  }

  const double thr = std::log(p_.b) / 2;
  std::vector<CriticalPoint> found;
  for (const auto& [k0, k1] : runs) {
    double lo = poly.params[k0];
    double hi = poly.params[k1 + 2];
    for (int it = 0;
         it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
      const double m1 = lo + (hi - lo) / 3;
      const double m2 = hi - (hi - lo) / 3;
      if (score_at(m1) < score_at(m2))
        hi = m2;
      else
        lo = m1;
    }
    const double t = promote(0.5 * (lo + hi));
    const double sc = score_at(t);
    if (sc < thr) found.push_back({t, phi(mm_, t), sc});
  }
  return found;
}

void HenonEngine::merge_candidates(std::vector<CriticalPoint> found) {
  for (CriticalPoint& c : cands_) found.push_back(c);
  std::sort(found.begin(), found.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.t < b.t; });
  std::vector<CriticalPoint> out;
  for (const CriticalPoint& c : found) {
    if (!out.empty() &&
        std::abs(c.t - out.back().t) <= 1e-6 * std::max(1.0, std::abs(c.t))) {
      if (c.score < out.back().score) out.back() = c;
    } else {
      out.push_back(c);
    }
  }
  cands_ = std::move(out);
}

double HenonEngine::turning_param(int index) {
  const std::size_t need = index >= 0 ? static_cast<std::size_t>(index) + 1
                                      : static_cast<std::size_t>(-index);
  const auto& arr = index >= 0 ? grid_.left : grid_.right;
  while (arr.size() < need) grow_round();
  return index >= 0 ? grid_.left[static_cast<std::size_t>(index)]
                    : grid_.right[static_cast<std::size_t>(-index - 1)];
}

ObservedWindow HenonEngine::window(int generations) {
  if (generations < 1) fail(Errc::InvalidArgument, "generations must be positive");
  while (true) {
    const double t0 = grid_.left.front();
    double eg = t0;
    for (int j = 0; j < generations; ++j) eg *= mm_.mu;
    const double eh = eg * mm_.mu;
    const double reach = std::max(std::abs(eg), std::abs(eh));
    if (-lo_ >= reach && hi_ >= reach) break;
    grow_round();
  }
  try {
    return observe_window(mm_, grid_, side_fn(), generations);
  } catch (const Error& err) {
    if (err.code() != Errc::MalformedPattern) throw;
    // The window no longer passes the geometric cross-checks: turning points
    // beyond the detector's resolution influence the sides at this depth.
    fail(Errc::WindowTooDeep,
         "window of " + std::to_string(generations) +
             " generations exceeds the resolution of the detected turning "
             "points (" + err.what() + ")");
  }
}

FoldingPattern HenonEngine::folding(int generations) {
  return window(generations).fp;
}

KneadingSet HenonEngine::kneading_set(int count, int depth) {
  if (count < 1 || depth < 1)
    fail(Errc::InvalidArgument, "count and depth must be positive");
  const std::size_t need_left = static_cast<std::size_t>(count + 1) / 2;
  const std::size_t need_right = static_cast<std::size_t>(count) / 2;
  while (grid_.left.size() < need_left || grid_.right.size() < need_right)
    grow_round();
  int g = 1;
  for (; g < 64; ++g) {
    const double tl = grid_.left[need_left - 1];
    const double tr = need_right ? grid_.right[need_right - 1] : 0;
    double eg = grid_.left.front();
    for (int j = 0; j < g; ++j) eg *= mm_.mu;
    const double eh = eg * mm_.mu;
    if (std::min(eg, eh) <= tl && std::max(eg, eh) >= tr) break;
  }
  const ObservedWindow ow = window(g);
  const AnnotatedPattern ann = annotate(ow.fp);
  KneadingSet K = kneading_from_window(mm_, ann, ow, side_fn(), depth);
  auto rank = [](int i) { return i == 0 ? 0 : (i < 0 ? -2 * i - 1 : 2 * i); };
  std::sort(K.entries.begin(), K.entries.end(),
            [&](const KneadingEntry& x, const KneadingEntry& y) {
              return rank(x.index) < rank(y.index);
            });
  if (K.entries.size() < static_cast<std::size_t>(count))
    fail(Errc::NoCandidates, "window holds fewer turning points than requested");
  K.entries.resize(static_cast<std::size_t>(count));
  K.sort_entries();
  K.heuristic = true;
  validate(K);
  return K;
}

Window HenonEngine::itinerary(double t, int generations, int fwd_depth) {
  const ObservedWindow ow = window(generations);
  const AnnotatedPattern ann = annotate(ow.fp);
  return itinerary_at(mm_, ann, ow, side_fn(), t, fwd_depth);
}

WuPolyline HenonEngine::grow_wu(double target_arclength, double seg_tol,
                                long long vertex_budget) {
  if (target_arclength <= 0 || seg_tol <= 0)
    fail(Errc::InvalidArgument, "target arclength and seg_tol must be positive");
  // The curve itself only needs the parametrization, so pick the generation
  // count from a coarse arclength estimate without touching the detector.
  int g = 0;
  double lo = 0, hi = 0;
  for (;;) {
    if (++g > 64) fail(Errc::BudgetExceeded, "arclength target beyond the growth cap");
    const double t0 = grid_.left.front();
    double eg = t0;
    for (int j = 0; j < g; ++j) eg *= mm_.mu;
    const double eh = eg * mm_.mu;
    lo = std::min(eg, eh);
    hi = std::max(eg, eh);
    const WuPolyline coarse = assemble_polyline(
        mm_, {lo, hi}, {}, std::max(seg_tol, 1e-2), vertex_budget, true);
    if (coarse.total_arclength() >= target_arclength) break;
  }
  // Label the polyline with the deepest window that still validates; beyond
  // the detector's resolution the curve keeps growing but carries no further
  // turning-point markers.
  std::vector<Marker> markers;
  for (int gm = 1; gm <= g; ++gm) {
    try {
      const ObservedWindow ow = window(gm);
      markers = ow.left_marks;
      markers.insert(markers.end(), ow.right_marks.begin(), ow.right_marks.end());
    } catch (const Error& err) {
      if (err.code() != Errc::WindowTooDeep) throw;
      break;
    }
  }
  return assemble_polyline(mm_, {lo, hi}, markers, seg_tol, vertex_budget, true);
}

}  // namespace pf
