#pragma once

#include <optional>
#include <vector>

#include "pf/folding.hpp"
#include "pf/geometry.hpp"
#include "pf/manifold.hpp"

namespace pf {

struct LoziParams {
  double a = 0;
  double b = 0;
};

Point lozi_apply(const LoziParams& p, const Point& q);
Point lozi_apply_inverse(const LoziParams& p, const Point& q);

// Strict parameter domain with a hyperbolic attractor whose turning-point
// orbits avoid the switching line: b > 0, a*sqrt(2) - b > 2, 2a + b < 4.
bool in_lozi_domain(const LoziParams& p);

struct LoziFixedPoints {
  Point X;  // fixed point on the x > 0 branch; the unstable manifold of interest
  Point Y;  // fixed point on the x < 0 branch
};
LoziFixedPoints lozi_fixed_points(const LoziParams& p);

// Exact unstable-manifold engine. The manifold is piecewise straight; its
// kinks are forward images of the switching-line crossings, so the whole
// curve is tracked in parameter space by a cascade of affine solves with no
// geometric search. Turning points z_i are the crossings themselves: left of
// the fixed point in curve order they are z_0, z_1, ..., right of it
// z_{-1}, z_{-2}, ...
class LoziEngine {
 public:
  explicit LoziEngine(LoziParams p, double locus_eps = 1e-12);

  const LoziParams& params() const { return p_; }
  const ManifoldMap& map() const { return mm_; }
  double locus_eps() const { return locus_eps_; }
  int generations_grown() const { return rounds_; }

  Symbol side(const Point& q) const;
  SideFn side_fn() const;

  // Parameter of turning point z_index; grows the cascade on demand.
  double turning_param(int index);
  // All turning parameters found so far, split by side of the fixed point.
  const BasicPointGrid& grid() const { return grid_; }

  // The window of the given generation count, observed off the manifold and
  // cross-checked against the combinatorial reconstruction.
  ObservedWindow window(int generations);
  FoldingPattern folding(int generations);
  KneadingSet kneading_set(int count, int depth);
  Window itinerary(double t, int generations, int fwd_depth);

  // Grow the manifold until its chord arclength reaches the target, then
  // sample it to seg_tol. Markers tag every basic point in the grown extent.
  WuPolyline grow_wu(double target_arclength, double seg_tol,
                     long long vertex_budget = 1 << 24);

  // Axis-aligned box around the 8-generation window plus a 2 percent margin.
  BoundingBox attractor_box();

  // Polygons of the set of plane points whose stored itinerary symbols match
  // the window. PlusMinus symbols split into both branches across the
  // switching band of width locus_eps.
  std::vector<ConvexPolygon> region(const Window& w);

 private:
  void grow_rounds(int rounds);
  void rebuild_grid();

  LoziParams p_;
  double locus_eps_;
  ManifoldMap mm_;
  double t0_ = 0;
  std::vector<double> verts_;      // kink parameters, ascending
  std::vector<double> crossings_;  // switching-line crossing parameters, ascending
  int rounds_ = 0;
  BasicPointGrid grid_;
  std::optional<BoundingBox> box_;
};

}  // namespace pf
