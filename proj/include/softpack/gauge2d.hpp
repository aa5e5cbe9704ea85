#pragma once

#include "softpack/common.hpp"
#include "softpack/polygon.hpp"

#include <optional>
#include <span>
#include <vector>

namespace softpack {

// Centrally symmetric convex polygon used as the unit disk M of a normed
// plane. Immutable once constructed; the constructor checks every invariant
// and throws Error(InvalidBody) naming the first one violated.
class ConvexBody2D {
 public:
  ConvexBody2D(std::vector<Vec2> vertices, bool threefold, double tol = kDefaultTol);

  // Regular n-gon with vertices at Euclidean distance `circumradius`, first
  // vertex at angle `phase`. The threefold flag is set when n % 6 == 0 and
  // the polygon is not rotated away from 120° symmetry (always true here).
  static ConvexBody2D regular(int n, double circumradius = 1.0, double phase = 0.0);
  // Regular 96-gon inscribed in the unit circle: the Euclidean-disk surrogate.
  static ConvexBody2D euclidean(int n = 96) { return regular(n); }
  static ConvexBody2D hexagon() { return regular(6); }
  // Square with vertices (±1, ±1); its gauge is the max norm.
  static ConvexBody2D square();

  const std::vector<Vec2>& vertices() const { return vertices_; }
  bool threefold() const { return threefold_; }
  std::size_t size() const { return vertices_.size(); }

  // Minkowski functional: max over edges of w_k·x with w_k = n_k / h_k.
  double norm(const Vec2& x) const;

  // Point of ∂M in the direction `angle`.
  Vec2 boundary_point(double angle) const;

  // center + radius·M as a counterclockwise polygon.
  Polygon homothet(const Vec2& center, double radius) const;

  // Scaled facet normals w_k (norm(x) = max_k w_k·x), one per edge k from
  // vertex k to vertex k+1.
  const std::vector<Vec2>& facet_functionals() const { return functionals_; }

  double area() const { return area_; }
  double circumradius() const { return circumradius_; }
  double inradius() const { return inradius_; }

  // True when `dir` is parallel to an edge of M within `tol` radians.
  bool parallel_to_edge(const Vec2& dir, double tol = 1e-9) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Vec2> functionals_;
  bool threefold_ = false;
  double area_ = 0.0;
  double circumradius_ = 0.0;
  double inradius_ = 0.0;
};

// center + radius·M
struct Homothet2D {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

double gauge_norm(const ConvexBody2D& body, const Vec2& x);

// Smallest homothet c + rM containing all points. The minimal radius is
// unique; when the optimal centers form a segment or polygon (possible for
// polygonal gauges) the centroid of that set is returned, which is the
// midpoint for two points.
Homothet2D smallest_enclosing_homothet(const ConvexBody2D& body,
                                       std::span<const Vec2> points,
                                       double tol = kDefaultTol);

// Homothet having a, b and c on its boundary (the gauge circumdisk), or
// nullopt for collinear input.
std::optional<Homothet2D> gauge_circumdisk(const ConvexBody2D& body, const Vec2& a,
                                           const Vec2& b, const Vec2& c,
                                           double tol = kDefaultTol);

// Distance along the ray a + r·v (v ∈ ∂M) at which the ray meets the
// bisector of a and q; +inf when it never does.
double ray_bisector_distance(const ConvexBody2D& body, const Vec2& a, const Vec2& v,
                             const Vec2& q);

// Point of the bisector of a and b on the line parallel to [a,b] at signed
// Euclidean offset `offset` from the midpoint (positive to the left of a→b).
Vec2 bisector_point(const ConvexBody2D& body, const Vec2& a, const Vec2& b, double offset);

// Point of the bisector of a and b on the left of a→b at gauge distance `mu`
// from a (mu >= ‖a−b‖/2).
Vec2 bisector_point_at_distance(const ConvexBody2D& body, const Vec2& a, const Vec2& b,
                                double mu);

}  // namespace softpack
