#pragma once

#include <vector>

#include "pf/error.hpp"

namespace pf {

struct Point {
  double x = 0;
  double y = 0;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

double norm(Point p);
double dist(Point a, Point b);

struct Mat2 {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  Point apply(Point p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
  double det() const { return a11 * a22 - a12 * a21; }
  Mat2 inverse() const;
};

// x -> m x + b
struct Affine {
  Mat2 m;
  Point b;
  Point apply(Point p) const { return m.apply(p) + b; }
  Affine inverse() const;
};

struct BoundingBox {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  void expand(Point p);
  void pad(double fraction);
  double diameter() const;
};

// Counterclockwise vertex list; empty means the empty set.
using ConvexPolygon = std::vector<Point>;

ConvexPolygon box_polygon(const BoundingBox& b);

// Keep the side nx*x + ny*y <= c.
ConvexPolygon clip_half_plane(const ConvexPolygon& poly, double nx, double ny, double c);

ConvexPolygon map_polygon(const Affine& f, const ConvexPolygon& poly);

ConvexPolygon intersect_convex(const ConvexPolygon& a, const ConvexPolygon& b);

double polygon_diameter(const ConvexPolygon& poly);

// Diameter of a finite union of convex polygons: the largest pairwise vertex
// distance.
double union_diameter(const std::vector<ConvexPolygon>& polys);

}  // namespace pf
