#pragma once

#include "softpack/common.hpp"

#include <span>
#include <vector>

namespace softpack {

// Vertex loop without a repeated closing vertex. Counterclockwise unless noted.
using Polygon = std::vector<Vec2>;

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= xmin - tol && p.x() <= xmax + tol && p.y() >= ymin - tol &&
           p.y() <= ymax + tol;
  }
  Rect eroded(double margin) const {
    return {xmin + margin, ymin + margin, xmax - margin, ymax - margin};
  }
  bool empty() const { return !(xmax > xmin && ymax > ymin); }
  Polygon polygon() const {
    return {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
  }
};

double signed_area(std::span<const Vec2> poly);
inline double area(std::span<const Vec2> poly) { return std::abs(signed_area(poly)); }

// Area centroid; falls back to the vertex average for degenerate loops.
Vec2 centroid(std::span<const Vec2> poly);

// Keeps the part of `poly` with normal·x <= offset (Sutherland–Hodgman step).
Polygon clip_halfplane(std::span<const Vec2> poly, const Vec2& normal, double offset);

// Clips an arbitrary simple polygon by a convex counterclockwise polygon. For a
// nonconvex subject the result may contain zero-width spurs, but its signed
// area is the exact intersection area.
Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> convex);

bool contains_convex(std::span<const Vec2> convex, const Vec2& p, double tol);

// Strict point-in-polygon for simple polygons (even-odd).
bool contains_simple(std::span<const Vec2> poly, const Vec2& p);

Polygon translated(std::span<const Vec2> poly, const Vec2& shift);

// Counterclockwise hull without collinear vertices.
Polygon convex_hull(std::span<const Vec2> points);

// Convex pieces covering `parts` \ convex. Pieces of area <= min_area are dropped.
std::vector<Polygon> subtract_convex(std::span<const Polygon> parts, std::span<const Vec2> convex,
                                     double min_area = 0.0);

// Area of region ∩ (∪ pieces) for a convex region and convex pieces. Only
// halfplane clipping is used, so touching pieces are handled robustly.
double covered_area(std::span<const Vec2> region, std::span<const Polygon> pieces);

// Boolean helpers on simple polygons; results are lists of simple polygons
// (holes are not expected for the inputs used here and are dropped).
std::vector<Polygon> polygon_union(std::span<const Polygon> pieces);
std::vector<Polygon> polygon_intersection(std::span<const Polygon> a,
                                          std::span<const Polygon> b);
double total_area(std::span<const Polygon> pieces);

// Closest distance between segments [p0,p1] and [q0,q1].
double segment_distance(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1);

}  // namespace softpack
