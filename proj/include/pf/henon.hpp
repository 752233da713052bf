#pragma once

#include <vector>

#include "pf/folding.hpp"
#include "pf/geometry.hpp"
#include "pf/manifold.hpp"

namespace pf {

struct HenonParams {
  double a = 0;
  double b = 0;
};

Point henon_apply(const HenonParams& p, const Point& q);
Mat2 henon_jacobian(const HenonParams& p, const Point& q);

struct HenonOptions {
  double locus_eps = 1e-9;   // half-width of the switching band around the locus
  double seg_tol = 1e-3;     // sampling resolution along the manifold
  int j_max = 12;            // forward steps scored per tangent
  long long vertex_budget = 1 << 23;
};

// A detected tangency between the manifold tangent and the contracting
// directions of the forward orbit, refined in parameter.
struct CriticalPoint {
  double t = 0;
  Point p;
  double score = 0;
};

// Numerical unstable-manifold engine. Everything here is heuristic: turning
// points come from a tangent-contraction score, the switching locus is an
// interpolation through them, and the reconstruction cross-checks in
// observe_window are the only certificates. Outputs are flagged accordingly.
class HenonEngine {
 public:
  explicit HenonEngine(HenonParams p, HenonOptions opt = {});

  const HenonParams& params() const { return p_; }
  const HenonOptions& options() const { return opt_; }
  const ManifoldMap& map() const { return mm_; }

  Symbol side(const Point& q) const;
  SideFn side_fn() const;
  Point tangent_at(double t) const;

  // One detection sweep over the currently sampled extent with explicit
  // settings; does not touch the engine's cached grid.
  std::vector<CriticalPoint> detect_critical_points(int j_max, double seg_tol);

  // Extends the sampled parameter extent by one contraction round and
  // refreshes the turning-point set; useful to deepen detection beyond what
  // an operation would request on its own.
  void grow_extent_round() { grow_round(); }

  // Interpolation nodes of the switching locus, ascending in y.
  const std::vector<Point>& critical_locus() const { return locus_; }
  const std::vector<CriticalPoint>& candidates() const { return cands_; }
  const BasicPointGrid& grid() const { return grid_; }

  double turning_param(int index);
  ObservedWindow window(int generations);
  FoldingPattern folding(int generations);
  KneadingSet kneading_set(int count, int depth);
  Window itinerary(double t, int generations, int fwd_depth);
  WuPolyline grow_wu(double target_arclength, double seg_tol,
                     long long vertex_budget = 1 << 24);

 private:
  void grow_round();
  void merge_candidates(std::vector<CriticalPoint> found);
  void ensure_reach(double reach);
  void rebuild();

  HenonParams p_;
  HenonOptions opt_;
  ManifoldMap mm_;
  double lo_ = 0, hi_ = 0;  // sampled parameter extent
  int rounds_ = 0;
  std::vector<CriticalPoint> cands_;
  BasicPointGrid grid_;
  std::vector<Point> locus_;
  bool plus_right_ = true;  // the fixed point's side of the locus reads Plus
};

}  // namespace pf
