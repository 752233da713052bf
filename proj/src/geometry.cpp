#include "pf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pf {

double norm(Point p) { return std::hypot(p.x, p.y); }
double dist(Point a, Point b) { return norm(a - b); }

Mat2 Mat2::inverse() const {
  const double d = det();
  if (d == 0) fail(Errc::InvalidArgument, "singular matrix");
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Affine Affine::inverse() const {
  const Mat2 mi = m.inverse();
  const Point bi = mi.apply(b);
  return {mi, {-bi.x, -bi.y}};
}

void BoundingBox::expand(Point p) {
  xmin = std::min(xmin, p.x);
  xmax = std::max(xmax, p.x);
  ymin = std::min(ymin, p.y);
  ymax = std::max(ymax, p.y);
}

void BoundingBox::pad(double fraction) {
  const double dx = (xmax - xmin) * fraction;
  const double dy = (ymax - ymin) * fraction;
  xmin -= dx;
  xmax += dx;
  ymin -= dy;
  ymax += dy;
}

double BoundingBox::diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }

ConvexPolygon box_polygon(const BoundingBox& b) {
  return {{b.xmin, b.ymin}, {b.xmax, b.ymin}, {b.xmax, b.ymax}, {b.xmin, b.ymax}};
}

ConvexPolygon clip_half_plane(const ConvexPolygon& poly, double nx, double ny, double c) {
  if (poly.empty()) return {};
  ConvexPolygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = poly[i];
    const Point nxt = poly[(i + 1) % n];
    const double dc = nx * cur.x + ny * cur.y - c;
    const double dn = nx * nxt.x + ny * nxt.y - c;
    if (dc <= 0) out.push_back(cur);
    if ((dc < 0 && dn > 0) || (dc > 0 && dn < 0)) {
      const double s = dc / (dc - dn);
      out.push_back(cur + s * (nxt - cur));
    }
  }
  if (out.size() < 3) return {};
  return out;
}

ConvexPolygon map_polygon(const Affine& f, const ConvexPolygon& poly) {
  ConvexPolygon out;
  out.reserve(poly.size());
  for (Point p : poly) out.push_back(f.apply(p));
  // An orientation-reversing map flips the winding; keep vertices CCW.
  if (f.m.det() < 0) std::reverse(out.begin(), out.end());
  return out;
}

ConvexPolygon intersect_convex(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  ConvexPolygon out = a;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const Point p = b[i];
    const Point q = b[(i + 1) % n];
    // Inside of a CCW polygon lies left of each directed edge.
    const double nx = q.y - p.y;
    const double ny = p.x - q.x;
    out = clip_half_plane(out, nx, ny, nx * p.x + ny * p.y);
  }
  return out;
}

double polygon_diameter(const ConvexPolygon& poly) {
  double best = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j)
      best = std::max(best, dist(poly[i], poly[j]));
  return best;
}

double union_diameter(const std::vector<ConvexPolygon>& polys) {
  std::vector<Point> pts;
  for (const auto& poly : polys) pts.insert(pts.end(), poly.begin(), poly.end());
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, dist(pts[i], pts[j]));
  return best;
}

}  // namespace pf
