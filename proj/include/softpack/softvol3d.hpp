#pragma once

#include "softpack/lat3d.hpp"

#include <cstdint>
#include <vector>

namespace softpack {

// vol(poly ∩ (center + r·B³)), exact up to rounding. The polytope may lie
// anywhere relative to the ball center.
double ball_polytope_volume(const Polyhedron3D& poly, double r, const Vec3& center = Vec3::Zero());

// Area of face `face` of `poly` inside the ball center + r·B³.
double face_disk_area(const Polyhedron3D& poly, std::size_t face, double r,
                      const Vec3& center = Vec3::Zero());

// vol(V ∩ (1+λ)B³)/vol(V) for the DV cell V. NotAPacking when the minimal
// vector is shorter than 2.
double soft_density_3d(const Lattice3D& lattice, double lambda, double tol = kDefaultTol);

struct BallCluster {
  std::vector<Vec3> centers;
  std::vector<double> radii;

  // Throws InvalidInput for size mismatch or bad radii, CoincidentCenters for
  // repeated centers.
  void validate(double tol = kDefaultTol) const;
  std::size_t size() const { return centers.size(); }
};

struct WallSet {
  // area(i, j) = vol₂(C_i ∩ C_j ∩ B_i ∩ B_j), symmetric, zero diagonal.
  Eigen::MatrixXd area;
  // Power cells C_i, clipped to a cube around B_i; face tags name the
  // neighbor across the face.
  std::vector<Polyhedron3D> cells;
  // vol(∪ B_i) = Σ vol(C_i ∩ B_i).
  double union_volume = 0.0;
};

WallSet csikos_walls(const BallCluster& cluster, double tol = kDefaultTol);

double union_volume(const BallCluster& cluster, double tol = kDefaultTol);

// d/dt ‖x_i − x_j‖ for centers moving with the given velocities.
Eigen::MatrixXd pair_speeds(const BallCluster& cluster, const std::vector<Vec3>& velocities);

// Σ_{i<j} speeds(i,j)·W_ij.
double csikos_derivative(const WallSet& walls, const Eigen::MatrixXd& speeds);

struct LocalMaxTrial {
  Mat3 s = Mat3::Zero();            // admissible deformation direction, ‖S‖_F = 1
  std::vector<double> speeds;       // d′_i per DV face of FCC
  int resamples = 0;                // rejected draws before this one
  double raw_fd_slope = 0.0;        // FD slope for the unprojected draw
  double analytic = 0.0;            // ρ′(0) from the face quantities
  double fd = 0.0;                  // one-sided second-order difference
  double relative_error = 0.0;
  double numerator_analytic = 0.0;  // ½ Σ d′_i W_i
  double numerator_fd = 0.0;
  double denominator_analytic = 0.0;  // ½ Σ d′_i F_i
  double denominator_fd = 0.0;
  std::vector<double> rho_t;        // ρ((I + tS)·FCC) per requested t
  double min_vector_t = 0.0;        // min over t of the minimal vector length
  bool pass = false;
};

struct LocalMaxReport {
  double lambda = 0.0;
  double rho0 = 0.0;
  double wall = 0.0;   // W
  double face = 0.0;   // F
  double numerator = 0.0;    // vol(V ∩ (1+λ)B³)
  double denominator = 0.0;  // vol(V)
  double fd_step = 1e-4;
  std::vector<double> t_values;
  std::vector<LocalMaxTrial> trials;
  int violations = 0;
};

// Projects a raw direction onto the admissible set: adds a multiple of I so
// that every d′_i = ⟨x_i, S x_i⟩/‖x_i‖ over the FCC minimal vectors is
// positive, then normalizes ‖S‖_F = 1. Throws DegenerateDeformation when all
// d′_i vanish (S generates a rotation).
Mat3 admissible_deformation(const Mat3& raw, double tol = 1e-9);

// d′_i for the FCC minimal vectors `xs`.
std::vector<double> radial_speeds(const Mat3& s, const std::vector<Vec3>& xs);

LocalMaxReport local_max_experiment(double lambda, int trials, const std::vector<double>& t_values,
                                    std::uint64_t seed, unsigned threads = 1,
                                    double fd_tolerance = 1e-3);

}  // namespace softpack
