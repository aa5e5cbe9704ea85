#pragma once

#include "softpack/common.hpp"

#include <string>
#include <vector>

namespace softpack {

// Lattice spanned by the columns of `basis`.
struct Lattice3D {
  Mat3 basis = 2.0 * Mat3::Identity();

  double determinant() const { return basis.determinant(); }

  // Presets normalized to minimal distance 2.
  static Lattice3D fcc();
  static Lattice3D bcc();
  static Lattice3D cubic();
  static Lattice3D from_basis(const Mat3& basis);  // throws InvalidInput if singular
};

// LLL-reduced basis (δ = 3/4) of the same lattice; deterministic.
Mat3 lll_reduce(const Mat3& basis);

// Nonzero lattice vectors of Euclidean length <= radius, sorted by length and
// then lexicographically.
std::vector<Vec3> lattice_vectors_within(const Lattice3D& lattice, double radius);

double min_vector_length(const Lattice3D& lattice);

// All lattice vectors of minimal length (relative tolerance `rel_tol`).
std::vector<Vec3> minimal_vectors(const Lattice3D& lattice, double rel_tol = 1e-9);

struct Face3D {
  std::vector<int> loop;  // vertex indices, counterclockwise seen from outside
  Vec3 normal = Vec3::Zero();  // unit outward normal
  double offset = 0.0;         // normal·x on the face
  int tag = -1;                // caller-defined id of the cutting plane
  Vec3 generator = Vec3::Zero();  // e.g. the lattice vector defining the face
};

// Convex polyhedron stored as a vertex list with planar faces.
struct Polyhedron3D {
  std::vector<Vec3> vertices;
  std::vector<Face3D> faces;

  double volume() const;
  double face_area(std::size_t face) const;
  std::vector<Vec3> face_points(std::size_t face) const;
  std::size_t edge_count() const;
  int euler_characteristic() const;
  double max_vertex_norm(const Vec3& from = Vec3::Zero()) const;
  bool contains(const Vec3& p, double tol = 1e-12) const;
};

// Axis-aligned cube center ± half (faces tagged -1).
Polyhedron3D make_box(const Vec3& center, double half);

// Keeps {x : normal·x <= offset}. `tol` is the on-plane tolerance. The new
// face carries `tag` and `generator`. Returns an empty polyhedron when
// nothing is left.
Polyhedron3D clip(const Polyhedron3D& poly, const Vec3& normal, double offset, int tag,
                  const Vec3& generator, double tol);

// Dirichlet–Voronoi cell of the origin. Face tags index the generating
// lattice vectors (face.generator). Throws NumericalDegeneracy when the cell
// fails its consistency checks.
Polyhedron3D dv_cell(const Lattice3D& lattice, double tol = 1e-9);

// Largest distance from a lattice point to the nearest lattice point.
double covering_radius(const Lattice3D& lattice);

inline const double kSqrt53 = std::sqrt(5.0 / 3.0);

// 1 − ((√(5/3) − 1 − λ)/(11√(5/3) + 3 − λ))³ for 0 < λ < √(5/3) − 1;
// LambdaOutOfRange otherwise.
double theorem2_bound(double lambda);

// Object File Format text.
std::string to_off(const Polyhedron3D& poly);

}  // namespace softpack
