#pragma once

#include "softpack/gauge2d.hpp"
#include "softpack/polygon.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace softpack {

// Finite packing of translates of M: centers at pairwise gauge distance >= 2,
// plus the rectangle the configuration was generated in.
struct PackingConfig2D {
  std::vector<Vec2> centers;
  ConvexBody2D body;
  Rect window;

  // Throws Error(NotAPacking) naming the first close pair.
  void validate(double tol = kDefaultTol) const;
  // First grid sample of the window whose gauge distance to every center is
  // >= 2, if any.
  std::optional<Vec2> unsaturated_sample(double grid_step) const;
  double diameter() const;
};

// Delaunay margin: boundary effects stay within this distance of the window.
inline constexpr double kErosionMargin = 4.0;

struct DelaunayCell {
  std::vector<int> ids;          // center indices, counterclockwise
  std::vector<Vec2> vertices;    // the corresponding (possibly jittered) points
  Homothet2D circumdisk;

  double area() const { return softpack::area(vertices); }
};

struct DelaunayOptions {
  double tol = kDefaultTol;
  // Only triples whose pairwise gauge distances are at most this are tried.
  // Saturated packings have circumradius < 2, so 4 plus a little slack is
  // enough for every cell meeting the eroded window.
  double max_edge = std::numeric_limits<double>::infinity();
  // Apply the deterministic jitter when a candidate edge is parallel to an
  // edge of M.
  bool allow_jitter = true;
};

struct Delaunay2D {
  std::vector<Vec2> points;  // centers after any jitter
  bool jittered = false;
  std::vector<DelaunayCell> cells;
};

Delaunay2D delaunay(const PackingConfig2D& config, const DelaunayOptions& options = {});

// Voronoi cell of `center_index`, clipped to the configuration window. The
// result is one or more simple polygons (one for configurations in general
// position).
std::vector<Polygon> voronoi_cell(const PackingConfig2D& config, int center_index,
                                  double tol = kDefaultTol);

struct Edge2D {
  int side = 0;   // side k joins cell vertex k and k+1
  int id0 = 0;
  int id1 = 0;
  Vec2 p0;
  Vec2 p1;
};

// Sides of the cell whose line separates the cell from its circumcenter.
// Empty when the circumcenter lies in the closed cell.
std::vector<Edge2D> separating_sides(const DelaunayCell& cell, double tol = kDefaultTol);

enum class VertexKind : std::uint8_t { Center, BridgeApex };

struct MolnarVertex {
  Vec2 point;
  VertexKind kind = VertexKind::Center;
  int id = -1;  // center index, or index of the Delaunay cell owning the apex
};

struct MolnarCell {
  int delaunay_index = -1;
  std::vector<MolnarVertex> boundary;  // counterclockwise

  Polygon polygon() const;
  double area() const { return softpack::area(polygon()); }
};

struct Bridge {
  int cell = -1;  // Delaunay cell whose separating side is replaced
  int id0 = -1;
  int id1 = -1;
  Vec2 p0;
  Vec2 apex;
  Vec2 p1;
};

struct Molnar2D {
  std::vector<MolnarCell> cells;
  std::vector<Bridge> bridges;
};

// Replaces every separating side by its bridge. Throws UniquenessViolation if
// a cell has more than one separating side.
Molnar2D molnar_decomposition(const Delaunay2D& delaunay, double tol = kDefaultTol);

// cl(conv{a,b,c} \ conv{a,b,c'}).
struct RefinedCell {
  Vec2 a;
  Vec2 b;
  Vec2 c;
  Vec2 cprime;
  int a_id = -1;
  int b_id = -1;
  int delaunay_index = -1;
  bool cprime_is_midpoint = true;

  // Convex pieces whose union is the cell: conv{a,c',c} and conv{c',b,c}.
  std::array<Polygon, 2> pieces() const;
  double area() const;
};

std::vector<RefinedCell> refined_molnar(const Delaunay2D& delaunay, const Molnar2D& molnar,
                                        double tol = kDefaultTol);

struct Tessellation2D {
  PackingConfig2D config;
  Delaunay2D delaunay;
  Molnar2D molnar;
  std::vector<RefinedCell> refined;
};

Tessellation2D tessellate(const PackingConfig2D& config, const DelaunayOptions& options = {});

struct EquilateralReference {
  std::array<Vec2, 3> triangle;  // counterclockwise, first side along the direction
  Vec2 circumcenter;
  double circumradius = 0.0;     // gauge circumradius R(direction)
  double edge_length = 0.0;      // Euclidean side length
};

// Euclidean-regular triangle with gauge side lengths 2 and one side parallel
// to `direction`. Requires a threefold body.
EquilateralReference equilateral_reference(const ConvexBody2D& body, const Vec2& direction);

// --- verification helpers -------------------------------------------------

struct TilingReport {
  double window_area = 0.0;
  double delaunay_area = 0.0;
  double molnar_area = 0.0;
  double refined_area = 0.0;

  double max_relative_error() const;
};

// Areas of each decomposition clipped to `window` (normally the eroded window).
TilingReport tiling_report(const Tessellation2D& tess, const Rect& window);

// Bridges meet each other and the decomposition edges only at
// endpoints. Returns a description of the first violation.
std::optional<std::string> check_bridges(const Tessellation2D& tess, double tol = 1e-9);

// No center lies in any open circumdisk.
std::optional<std::string> check_circumdisks_empty(const Tessellation2D& tess,
                                                   double tol = 1e-9);

// Refined-cell invariants; `saturated` adds the bound ‖a−c‖ < 2 and, for
// threefold bodies, ‖a−c‖ >= R(a,b).
std::optional<std::string> check_refined_cell(const RefinedCell& cell, const ConvexBody2D& body,
                                              bool saturated, double tol = 1e-9);

// Random sequential addition followed by a grid fill, so that every grid
// sample of the window ends up at gauge distance < 2 from some center.
PackingConfig2D random_saturated_config(const ConvexBody2D& body, const Rect& window,
                                        std::uint64_t seed, double grid_step = 0.05);

// Lattice points u·i + v·j (with the origin shifted by `offset`) inside `window`.
PackingConfig2D lattice_config(const ConvexBody2D& body, const Vec2& u, const Vec2& v,
                               const Rect& window, const Vec2& offset = Vec2::Zero());

}  // namespace softpack
