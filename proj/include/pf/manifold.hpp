#pragma once

#include <functional>

#include "pf/folding.hpp"
#include "pf/geometry.hpp"

namespace pf {

// Unstable-manifold parametrization shared by the map engines. The branch of
// W^u through the fixed point is parametrized so that applying the map sends
// parameter t to mu * t. phi(t) pulls t into the chart |s| <= chart_radius,
// evaluates the chart X + s v + s^2 w2, and pushes forward. For a piecewise
// affine map the chart is exact with w2 = 0.
struct ManifoldMap {
  std::function<Point(const Point&)> fwd;
  Point fixed{};
  double mu = 0;
  Point v{};   // unit unstable eigenvector
  Point w2{};  // quadratic chart coefficient
  double chart_radius = 0;
};

Point phi(const ManifoldMap& mm, double t);

// Side of a point with respect to the critical locus: PlusMinus within the
// locus tolerance.
using SideFn = std::function<Symbol(const Point&)>;

// Parameters of the critical (turning) points, outward per side: left[k] < 0
// is z_k, right[k] > 0 is z_{-1-k}.
struct BasicPointGrid {
  std::vector<double> left;
  std::vector<double> right;
};

struct Marker {
  double t = 0;  // parameter; z_i^j sits at mu^j * t_i
  int i = 0;
  int j = 0;
  friend bool operator==(const Marker&, const Marker&) = default;
};

// A g-generation window read directly off the manifold: basic points sorted
// by parameter around the fixed point, 0 for turning points and 1 for their
// images. Construction cross-checks the geometric orbit labels against the
// combinatorial reconstruction of the same window.
struct ObservedWindow {
  FoldingPattern fp;
  std::vector<Marker> left_marks;   // coordinates -1, -2, ...
  std::vector<Marker> right_marks;  // coordinates 1, 2, ...
  double lo = 0, hi = 0;

  const Marker& at(int coord) const;
};

ObservedWindow observe_window(const ManifoldMap& mm, const BasicPointGrid& grid,
                              const SideFn& side, int generations);

// Parameter span of each basic arc of the window, with its arc-code.
struct ArcSpan {
  double lo = 0, hi = 0;
  Word code;
};
std::vector<ArcSpan> arc_spans(const AnnotatedPattern& ann, const ObservedWindow& ow);

// Two-sided itinerary of the point phi(t): the stored left part and the
// symbol at coordinate 0 come from the arc-code of the basic arc containing
// t, deeper right symbols from iterating the point.
Window itinerary_at(const ManifoldMap& mm, const AnnotatedPattern& ann,
                    const ObservedWindow& ow, const SideFn& side, double t,
                    int fwd_depth);

// Kneading set of the window's turning points: arc-codes from the window,
// tails of the requested depth by iterating each turning point forward.
KneadingSet kneading_from_window(const ManifoldMap& mm, const AnnotatedPattern& ann,
                                 const ObservedWindow& ow, const SideFn& side,
                                 int depth);

struct WuPolyline {
  std::vector<Point> pts;
  std::vector<double> params;
  std::vector<double> arclength;  // cumulative chord length from the first vertex
  std::size_t origin = 0;         // vertex at parameter 0 (the fixed point)

  struct MarkerRef {
    std::size_t vertex = 0;
    double t = 0;
    int i = 0;
    int j = 0;  // 0 for the turning points themselves
  };
  std::vector<MarkerRef> markers;  // parameter order
  double seg_tol = 0;
  bool heuristic = false;

  double total_arclength() const { return arclength.empty() ? 0 : arclength.back(); }
};

// Evaluate phi at the given parameters (sorted, deduplicated, marker
// parameters and 0 inserted), subdividing every chord to seg_tol.
WuPolyline assemble_polyline(const ManifoldMap& mm, std::vector<double> vertex_params,
                             const std::vector<Marker>& markers, double seg_tol,
                             long long vertex_budget, bool heuristic);

}  // namespace pf
