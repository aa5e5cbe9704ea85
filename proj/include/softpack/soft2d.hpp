#pragma once

#include "softpack/gauge2d.hpp"
#include "softpack/tess2d.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace softpack {

struct Lattice2D {
  Vec2 u = Vec2(2.0, 0.0);
  Vec2 v = Vec2(1.0, 1.7320508075688772);

  double determinant() const { return cross(u, v); }
};

// Lagrange–Gauss reduction in the Euclidean norm; the result spans the same
// lattice and is positively oriented.
Lattice2D reduce(const Lattice2D& lattice);

// Smallest gauge norm of a nonzero lattice vector.
double min_gauge_vector(const Lattice2D& lattice, const ConvexBody2D& body);

// Throws InvalidInput for negative or non-finite λ.
void check_lambda(double lambda);

// δ(F) of a refined cell: the fraction of F covered by a+(1+λ)M and b+(1+λ)M.
double cell_soft_density(const RefinedCell& cell, const ConvexBody2D& body, double lambda);

// ρ(T) for the triangle conv{a,b,c}, covered by the soft bodies at a and b.
double triangle_soft_density(const Vec2& a, const Vec2& b, const Vec2& c,
                             const ConvexBody2D& body, double lambda);

// Area of the fundamental parallelogram covered by the soft bodies of all
// lattice points, divided by |det|. Throws NotAPacking when the lattice is
// too short.
double lattice_soft_density(const Lattice2D& lattice, const ConvexBody2D& body, double lambda,
                            double tol = kDefaultTol);

// Lattice generated by equilateral_reference(body, direction θ).
Lattice2D reference_lattice(const ConvexBody2D& body, double theta);

struct OptimalLattice {
  Lattice2D lattice;
  double density = 0.0;
  double theta = 0.0;               // edge direction in radians, in [0, 2π/3)
  std::vector<double> sample_densities;  // one per sampled direction
};

OptimalLattice optimal_lattice_search(const ConvexBody2D& body, double lambda,
                                      int direction_samples = 720, unsigned threads = 1);

// Area-weighted mean of δ(F) over refined cells lying inside `region`.
struct WindowDensity {
  double density = 0.0;
  double area = 0.0;
  int cells_counted = 0;
};

WindowDensity window_soft_density(const Tessellation2D& tess, double lambda, const Rect& region);

struct LemmaReport {
  int trials = 0;
  int violations = 0;           // ρ(T) > ρ(T′) + tol
  int equality_cases = 0;       // |ρ(T) − ρ(T′)| <= tol
  int equality_mismatches = 0;  // equality without the lemma's equality condition
  int resampled = 0;            // draws rejected before a valid pair was found
  double max_excess = -1.0;     // max of ρ(T) − ρ(T′)
  std::vector<std::string> failures;
};

// Isosceles pairs T ⊇ T′ over a common base with apexes on the bisector.
LemmaReport lemma_legs_check(const ConvexBody2D& body, double lambda, int trials,
                             std::uint64_t seed, double tol = 1e-9);

// Common apex at the origin, parallel chords of τ·∂M as bases.
LemmaReport lemma_base_check(const ConvexBody2D& body, double lambda, int trials,
                             std::uint64_t seed, double tol = 1e-9);

struct ArcReport {
  int trials = 0;
  int violations = 0;
  double min_outer_norm = 0.0;  // min gauge over A(arc(x,y)); should be >= 1
  double max_inner_norm = 0.0;  // max gauge over the two other arcs; should be <= 1
  std::vector<std::string> failures;
};

struct ArcQuadruple {
  double x = 0.0;  // boundary angles, counterclockwise x <= x' < y' <= y
  double xp = 0.0;
  double yp = 0.0;
  double y = 0.0;
};

// Checks one quadruple; throws DegenerateQuadruple if two points are
// antipodal or x' = y'.
ArcReport linear_map_arc_check(const ConvexBody2D& body, const ArcQuadruple& q,
                               double tol = 1e-9);
ArcReport linear_map_arc_check(const ConvexBody2D& body, int trials, std::uint64_t seed,
                               double tol = 1e-9);

}  // namespace softpack
