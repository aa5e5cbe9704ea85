#include "softpack/softvol3d.hpp"

#include "softpack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace softpack {

namespace {

// Solid angle of the triangle (a, b, c) (vectors from the apex), signed by
// the orientation a·(b×c) (Van Oosterom–Strackee).
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = a.norm();
  const double lb = b.norm();
  const double lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  if (num == 0.0 && den >= 0.0) return 0.0;
  return 2.0 * std::atan2(num, den);
}

struct FaceTerms {
  double h = 0.0;            // signed distance from the ball center to the face plane
  double area_in = 0.0;      // area of face ∩ ball
  double omega_total = 0.0;  // signed solid angle of the face
  double omega_in = 0.0;     // signed solid angle of face ∩ ball
};

// Fan decomposition about the foot q of the ball center: every face edge is
// split where it crosses the circle plane ∩ sphere; pieces inside the circle
// give triangles, pieces outside give circular sectors.
FaceTerms face_terms(const std::vector<Vec3>& pts, const Vec3& n, double offset, double r,
                     const Vec3& x0) {
  FaceTerms ft;
  ft.h = offset - n.dot(x0);
  const Vec3 q = x0 + ft.h * n;
  const Vec3 a = q - x0;
  const double rho2 = r * r - ft.h * ft.h;
  const double sgn = ft.h > 0.0 ? 1.0 : (ft.h < 0.0 ? -1.0 : 0.0);
  const double sector_omega = rho2 > 0.0 ? 1.0 - std::abs(ft.h) / r : 0.0;
  const std::size_t m = pts.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec3& p0 = pts[k];
    const Vec3& p1 = pts[(k + 1) % m];
    ft.omega_total += triangle_solid_angle(a, p0 - x0, p1 - x0);
    if (rho2 <= 0.0) continue;
    const Vec3 d = p1 - p0;
    const Vec3 f = p0 - q;
    double cuts[4] = {0.0, 0.0, 0.0, 1.0};
    int count = 1;
    const double qa = d.squaredNorm();
    if (qa > 0.0) {
      const double qb = 2.0 * f.dot(d);
      const double qc = f.squaredNorm() - rho2;
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = (-qb - sq) / (2.0 * qa);
        const double t2 = (-qb + sq) / (2.0 * qa);
        if (t1 > 0.0 && t1 < 1.0) cuts[count++] = t1;
        if (t2 > 0.0 && t2 < 1.0) cuts[count++] = t2;
      }
    }
    cuts[count++] = 1.0;
    for (int i = 0; i + 1 < count; ++i) {
      const Vec3 s0 = p0 + cuts[i] * d;
      const Vec3 s1 = p0 + cuts[i + 1] * d;
      const Vec3 u0 = s0 - q;
      const Vec3 u1 = s1 - q;
      const Vec3 mid = 0.5 * (u0 + u1);
      if (mid.squaredNorm() <= rho2) {
        ft.area_in += 0.5 * n.dot(u0.cross(u1));
        ft.omega_in += triangle_solid_angle(a, s0 - x0, s1 - x0);
      } else {
        const double dphi = std::atan2(n.dot(u0.cross(u1)), u0.dot(u1));
        ft.area_in += 0.5 * rho2 * dphi;
        ft.omega_in += sgn * dphi * sector_omega;
      }
    }
  }
  return ft;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Lattice3D deformed_fcc(const Mat3& s, double t) {
  return Lattice3D{(Mat3::Identity() + t * s) * Lattice3D::fcc().basis};
}

}  // namespace

double ball_polytope_volume(const Polyhedron3D& poly, double r, const Vec3& center) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "radius must be >= 0");
  if (r == 0.0 || poly.faces.empty()) return 0.0;
  double vol = 0.0;
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    const auto& face = poly.faces[f];
    const FaceTerms ft = face_terms(poly.face_points(f), face.normal, face.offset, r, center);
    vol += (ft.h * ft.area_in + r * r * r * (ft.omega_total - ft.omega_in)) / 3.0;
  }
  return std::max(vol, 0.0);
}

double face_disk_area(const Polyhedron3D& poly, std::size_t face, double r, const Vec3& center) {
  const auto& f = poly.faces[face];
  return std::max(0.0, face_terms(poly.face_points(face), f.normal, f.offset, r, center).area_in);
}

double soft_density_3d(const Lattice3D& lattice, double lambda, double tol) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw Error(ErrorKind::InvalidInput, "soft parameter must be finite and >= 0, got " + fmt(lambda));
  }
  const double shortest = min_vector_length(lattice);
  if (shortest < 2.0 - tol) {
    throw Error(ErrorKind::NotAPacking, "minimal lattice vector has length " + fmt(shortest) + " < 2");
  }
  const Polyhedron3D cell = dv_cell(lattice);
  return std::clamp(ball_polytope_volume(cell, 1.0 + lambda) / cell.volume(), 0.0, 1.0);
}

void BallCluster::validate(double tol) const {
  if (centers.size() != radii.size()) {
    throw Error(ErrorKind::InvalidInput, "cluster has " + std::to_string(centers.size()) +
                                             " centers but " + std::to_string(radii.size()) + " radii");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!centers[i].allFinite() || !std::isfinite(radii[i]) || radii[i] <= 0.0) {
      throw Error(ErrorKind::InvalidInput, "ball " + std::to_string(i) + " is not a proper ball");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((centers[i] - centers[j]).norm() <= tol) {
        throw Error(ErrorKind::CoincidentCenters,
                    "balls " + std::to_string(j) + " and " + std::to_string(i) + " share a center");
      }
    }
  }
}

WallSet csikos_walls(const BallCluster& cluster, double tol) {
  cluster.validate(tol);
  const int n = static_cast<int>(cluster.size());
  WallSet out;
  out.area = Eigen::MatrixXd::Zero(n, n);
  out.cells.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec3& xi = cluster.centers[i];
    const double ri = cluster.radii[i];
    Polyhedron3D cell = make_box(xi, 1.5 * ri);
    for (int j = 0; j < n && !cell.faces.empty(); ++j) {
      if (j == i) continue;
      const Vec3& xj = cluster.centers[j];
      const double rj = cluster.radii[j];
      // Power halfspace K_i <= K_j.
      const Vec3 normal = 2.0 * (xj - xi);
      const double offset = xj.squaredNorm() - xi.squaredNorm() - rj * rj + ri * ri;
      const double dist = (offset - normal.dot(xi)) / normal.norm();
      if (dist >= ri) continue;  // B_i lies inside the halfspace
      cell = clip(cell, normal, offset, j, xj - xi, tol * std::max(1.0, ri));
    }
    out.cells[i] = std::move(cell);
    out.union_volume += ball_polytope_volume(out.cells[i], ri, xi);
  }
  for (int i = 0; i < n; ++i) {
    const auto& cell = out.cells[i];
    for (std::size_t f = 0; f < cell.faces.size(); ++f) {
      const int j = cell.faces[f].tag;
      if (j <= i) continue;
      const double w = face_disk_area(cell, f, cluster.radii[i], cluster.centers[i]);
      out.area(i, j) = w;
      out.area(j, i) = w;
    }
  }
  return out;
}

double union_volume(const BallCluster& cluster, double tol) {
  return csikos_walls(cluster, tol).union_volume;
}

Eigen::MatrixXd pair_speeds(const BallCluster& cluster, const std::vector<Vec3>& velocities) {
  const int n = static_cast<int>(cluster.size());
  if (static_cast<int>(velocities.size()) != n) {
    throw Error(ErrorKind::InvalidInput, "need one velocity per ball");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3 d = cluster.centers[i] - cluster.centers[j];
      const double len = d.norm();
      if (len == 0.0) {
        throw Error(ErrorKind::CoincidentCenters,
                    "balls " + std::to_string(i) + " and " + std::to_string(j) + " share a center");
      }
      s(i, j) = s(j, i) = d.dot(velocities[i] - velocities[j]) / len;
    }
  }
  return s;
}

double csikos_derivative(const WallSet& walls, const Eigen::MatrixXd& speeds) {
  const auto n = walls.area.rows();
  if (speeds.rows() != n || speeds.cols() != n) {
    throw Error(ErrorKind::InvalidInput, "speed matrix does not match the wall set");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) sum += speeds(i, j) * walls.area(i, j);
  }
  return sum;
}

std::vector<double> radial_speeds(const Mat3& s, const std::vector<Vec3>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.dot(s * x) / x.norm());
  return out;
}

Mat3 admissible_deformation(const Mat3& raw, double tol) {
  const auto xs = minimal_vectors(Lattice3D::fcc());
  const auto d = radial_speeds(raw, xs);
  const double lo = *std::min_element(d.begin(), d.end());
  const double hi = *std::max_element(d.begin(), d.end());
  const double scale = std::max(1.0, raw.norm());
  if (std::max(std::abs(lo), std::abs(hi)) <= tol * scale) {
    throw Error(ErrorKind::DegenerateDeformation,
                "all radial speeds vanish (the direction generates an isometry)");
  }
  Mat3 s = raw;
  if (lo <= 0.0) {
    // Adding c·I raises every d′_i by 2c (‖x_i‖ = 2); leave a margin of a
    // tenth of the spread above zero.
    s += 0.5 * (-lo + 0.1 * (hi - lo)) * Mat3::Identity();
  }
  return s / s.norm();
}

LocalMaxReport local_max_experiment(double lambda, int trials, const std::vector<double>& t_values,
                                    std::uint64_t seed, unsigned threads, double fd_tolerance) {
  const double top = std::sqrt(2.0) - 1.0;
  if (!(lambda > 0.0 && lambda < top)) {
    throw Error(ErrorKind::LambdaOutOfRange, "lambda = " + fmt(lambda) + " outside (0, sqrt(2) - 1)");
  }
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "need at least one trial");
  for (double t : t_values) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "t values must be positive");
  }
  const double r = 1.0 + lambda;
  LocalMaxReport rep;
  rep.lambda = lambda;
  rep.t_values = t_values;
  const Polyhedron3D cell = dv_cell(Lattice3D::fcc());
  rep.numerator = ball_polytope_volume(cell, r);
  rep.denominator = cell.volume();
  rep.rho0 = rep.numerator / rep.denominator;
  rep.face = cell.face_area(0);
  rep.wall = face_disk_area(cell, 0, r);
  std::vector<Vec3> xs;
  std::vector<double> face_area;
  std::vector<double> wall_area;
  for (std::size_t f = 0; f < cell.faces.size(); ++f) {
    xs.push_back(cell.faces[f].generator);
    face_area.push_back(cell.face_area(f));
    wall_area.push_back(face_disk_area(cell, f, r));
  }
  const double h = rep.fd_step;
  const auto numerator_at = [&](const Mat3& s, double t) {
    return ball_polytope_volume(dv_cell(deformed_fcc(s, t)), r);
  };
  const auto denominator_at = [&](const Mat3& s, double t) {
    return std::abs(deformed_fcc(s, t).determinant());
  };

  rep.trials.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t k) {
    std::mt19937_64 rng(mix_seed(seed, k));
    std::normal_distribution<double> gauss;
    LocalMaxTrial tr;
    for (;;) {
      Mat3 raw;
      for (int i = 0; i < 9; ++i) raw(i / 3, i % 3) = gauss(rng);
      Mat3 s;
      try {
        s = admissible_deformation(raw);
      } catch (const Error&) {
        ++tr.resamples;
        continue;
      }
      double shortest = 1e300;
      for (double t : t_values) shortest = std::min(shortest, min_vector_length(deformed_fcc(s, t)));
      shortest = std::min(shortest, min_vector_length(deformed_fcc(s, 2.0 * h)));
      if (shortest < 2.0 - 1e-12) {
        ++tr.resamples;
        continue;
      }
      tr.s = s;
      tr.min_vector_t = shortest;
      const Mat3 raw_unit = raw / raw.norm();
      const double q0 = soft_density_3d(deformed_fcc(raw_unit, 0.0), lambda);
      try {
        const double q1 = soft_density_3d(deformed_fcc(raw_unit, h), lambda, 1.0);
        const double q2 = soft_density_3d(deformed_fcc(raw_unit, 2.0 * h), lambda, 1.0);
        tr.raw_fd_slope = (-3.0 * q0 + 4.0 * q1 - q2) / (2.0 * h);
      } catch (const Error&) {
        tr.raw_fd_slope = std::nan("");
      }
      break;
    }
    tr.speeds = radial_speeds(tr.s, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      tr.numerator_analytic += 0.5 * tr.speeds[i] * wall_area[i];
      tr.denominator_analytic += 0.5 * tr.speeds[i] * face_area[i];
    }
    const double nn = rep.numerator;
    const double dd = rep.denominator;
    tr.analytic = (tr.numerator_analytic * dd - nn * tr.denominator_analytic) / (dd * dd);
    const double n1 = numerator_at(tr.s, h);
    const double n2 = numerator_at(tr.s, 2.0 * h);
    const double d1 = denominator_at(tr.s, h);
    const double d2 = denominator_at(tr.s, 2.0 * h);
    tr.numerator_fd = (-3.0 * nn + 4.0 * n1 - n2) / (2.0 * h);
    tr.denominator_fd = (-3.0 * dd + 4.0 * d1 - d2) / (2.0 * h);
    tr.fd = (-3.0 * rep.rho0 + 4.0 * (n1 / d1) - n2 / d2) / (2.0 * h);
    tr.relative_error = std::abs(tr.analytic - tr.fd) / std::max(std::abs(tr.fd), 1e-300);
    bool decreasing = true;
    for (double t : t_values) {
      const double rho = soft_density_3d(deformed_fcc(tr.s, t), lambda);
      tr.rho_t.push_back(rho);
      decreasing = decreasing && rho < rep.rho0;
    }
    tr.pass = tr.analytic < 0.0 && tr.relative_error <= fd_tolerance && decreasing;
    rep.trials[k] = std::move(tr);
  });
  for (const auto& tr : rep.trials) rep.violations += tr.pass ? 0 : 1;
  return rep;
}

}  // namespace softpack
