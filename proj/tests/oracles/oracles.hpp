#pragma once

// Test-only reference computations. Nothing here calls into the library, so a
// shared bug cannot make both sides agree.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using V2 = Eigen::Vector2d;
using V3 = Eigen::Vector3d;
constexpr double pi = std::numbers::pi;

struct Circle {
  V2 center;
  double radius = 0.0;
};

// Euclidean circumcircle from the perpendicular-bisector equations.
inline Circle circumcircle(const V2& a, const V2& b, const V2& c) {
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const V2 o((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d,
             (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d);
  return {o, (a - o).norm()};
}

// Gauge norm of a centrally symmetric polygon (counterclockwise vertices),
// by intersecting the ray through x with the boundary.
inline double gauge(const std::vector<V2>& poly, const V2& x) {
  if (x.squaredNorm() == 0.0) return 0.0;
  double best = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const V2 a = poly[i], e = poly[(i + 1) % n] - poly[i];
    // t·x = a + s·e
    const double den = x.x() * (-e.y()) - x.y() * (-e.x());
    if (std::abs(den) < 1e-300) continue;
    const double t = (a.x() * (-e.y()) - a.y() * (-e.x())) / den;
    const double s = (x.x() * a.y() - x.y() * a.x()) / den;
    if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::max(best, 1.0 / t);
  }
  return best;
}

// Brute-force Euclidean Delaunay triangles (index triples, sorted) of points
// in general position.
inline std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<V2>& pts) {
  std::vector<std::array<int, 3>> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const V2 e1 = pts[j] - pts[i], e2 = pts[k] - pts[i];
        if (std::abs(e1.x() * e2.y() - e1.y() * e2.x()) < 1e-12) continue;
        const Circle c = circumcircle(pts[i], pts[j], pts[k]);
        bool empty = true;
        for (int m = 0; m < n && empty; ++m) {
          if (m == i || m == j || m == k) continue;
          if ((pts[m] - c.center).norm() < c.radius) empty = false;
        }
        if (empty) out.push_back({i, j, k});
      }
  return out;
}

// Smallest relative gap |‖p − o‖ − R|/R of a non-vertex point to any Delaunay
// circumcircle: small values mean the configuration is nearly co-circular.
inline double cocircular_margin(const std::vector<V2>& pts) {
  double margin = 1e300;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Circle c = circumcircle(pts[i], pts[j], pts[k]);
        if (!std::isfinite(c.radius)) continue;
        for (int m = 0; m < n; ++m) {
          if (m == i || m == j || m == k) continue;
          margin = std::min(margin, std::abs((pts[m] - c.center).norm() - c.radius) / c.radius);
        }
      }
  return margin;
}

// Density of disks of radius r centered on the triangular lattice of spacing
// 2, for 1 <= r <= 2/√3: three 60° sectors per lattice triangle minus half of
// each of the three lenses.
inline double triangular_disk_density(double r) {
  const double lens = 2.0 * r * r * std::acos(1.0 / r) - std::sqrt(4.0 * r * r - 4.0);
  const double covered = 3.0 * (pi * r * r / 6.0) - 1.5 * (r > 1.0 ? lens : 0.0);
  return covered / std::sqrt(3.0);
}

// FCC at minimal distance 2: the Voronoi cell is the rhombic dodecahedron
// with face distance 1 and volume 4√2. For 1 <= r <= √(4/3) the 12 caps cut
// off by the faces lie inside the faces and do not overlap.
inline double fcc_twelve_cap_density(double lambda) {
  const double r = 1.0 + lambda;
  const double h = std::max(r - 1.0, 0.0);
  const double cap = pi * h * h * (3.0 * r - h) / 3.0;
  return (4.0 / 3.0 * pi * r * r * r - 12.0 * cap) / (4.0 * std::sqrt(2.0));
}

// FCC minimal vectors √2·(±1, ±1, 0) and permutations.
inline std::vector<V3> fcc_minimal_vectors() {
  std::vector<V3> out;
  const double s = std::sqrt(2.0);
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      out.emplace_back(s * a, s * b, 0.0);
      out.emplace_back(s * a, 0.0, s * b);
      out.emplace_back(0.0, s * a, s * b);
    }
  return out;
}

// Quasi-Monte Carlo volume of {‖x‖ <= r, ⟨x, v⟩ <= ‖v‖²/2 for all v} using
// the R3 Kronecker sequence over the cube [−r, r]³.
inline double qmc_ball_voronoi_volume(const std::vector<V3>& vectors, double r, std::uint64_t samples) {
  double g = 2.0;
  for (int i = 0; i < 40; ++i) g = std::pow(1.0 + g, 0.25);  // root of x⁴ = x + 1
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g), a3 = 1.0 / (g * g * g);
  std::vector<std::pair<V3, double>> planes;
  for (const auto& v : vectors) planes.emplace_back(v, 0.5 * v.squaredNorm());
  std::uint64_t inside = 0;
  const double r2 = r * r;
  double u1 = 0.5, u2 = 0.5, u3 = 0.5;
  for (std::uint64_t n = 0; n < samples; ++n) {
    u1 += a1; u1 -= std::floor(u1);
    u2 += a2; u2 -= std::floor(u2);
    u3 += a3; u3 -= std::floor(u3);
    const V3 x((2.0 * u1 - 1.0) * r, (2.0 * u2 - 1.0) * r, (2.0 * u3 - 1.0) * r);
    if (x.squaredNorm() > r2) continue;
    bool in = true;
    for (const auto& [v, off] : planes) {
      if (v.dot(x) > off) { in = false; break; }
    }
    inside += in;
  }
  return static_cast<double>(inside) / static_cast<double>(samples) * 8.0 * r * r * r;
}

// Area of a union of disks by Green's theorem over the uncovered boundary arcs.
inline double union_disks_area(const std::vector<Circle>& disks) {
  double total = 0.0;
  const std::size_t n = disks.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ci = disks[i];
    if (ci.radius <= 0.0) continue;
    std::vector<std::pair<double, double>> covered;
    bool hidden = false;
    for (std::size_t j = 0; j < n && !hidden; ++j) {
      if (j == i || disks[j].radius <= 0.0) continue;
      const auto& cj = disks[j];
      const V2 dv = cj.center - ci.center;
      const double d = dv.norm();
      if (d + ci.radius <= cj.radius) {
        // Identical disks: keep the first one.
        if (d == 0.0 && ci.radius == cj.radius && i < j) continue;
        hidden = true;
        break;
      }
      if (d >= ci.radius + cj.radius || d + cj.radius <= ci.radius) continue;
      const double phi = std::atan2(dv.y(), dv.x());
      const double alpha = std::acos(std::clamp(
          (ci.radius * ci.radius + d * d - cj.radius * cj.radius) / (2.0 * ci.radius * d), -1.0, 1.0));
      double lo = phi - alpha, hi = phi + alpha;
      lo -= 2.0 * pi * std::floor(lo / (2.0 * pi));
      hi = lo + 2.0 * alpha;
      if (hi > 2.0 * pi) {
        covered.emplace_back(lo, 2.0 * pi);
        covered.emplace_back(0.0, hi - 2.0 * pi);
      } else {
        covered.emplace_back(lo, hi);
      }
    }
    if (hidden) continue;
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<double, double>> free_arcs;
    double at = 0.0;
    for (const auto& [lo, hi] : covered) {
      if (lo > at) free_arcs.emplace_back(at, lo);
      at = std::max(at, hi);
    }
    if (at < 2.0 * pi) free_arcs.emplace_back(at, 2.0 * pi);
    const double r = ci.radius, cx = ci.center.x(), cy = ci.center.y();
    for (const auto& [t0, t1] : free_arcs) {
      total += 0.5 * (r * r * (t1 - t0) + r * cx * (std::sin(t1) - std::sin(t0)) -
                      r * cy * (std::cos(t1) - std::cos(t0)));
    }
  }
  return total;
}

// Volume of a union of balls: the exact cross-section area integrated in z
// with tanh-sinh between all heights where the cross-section changes
// combinatorially (its endpoint clustering absorbs the square-root kinks there).
inline double union_balls_volume(const std::vector<V3>& centers, const std::vector<double>& radii) {
  const std::size_t n = centers.size();
  std::vector<double> breaks;
  for (std::size_t i = 0; i < n; ++i) {
    breaks.push_back(centers[i].z() - radii[i]);
    breaks.push_back(centers[i].z() + radii[i]);
  }
  const auto sphere_pair = [&](std::size_t i, std::size_t j) -> std::optional<std::pair<V3, double>> {
    const V3 dv = centers[j] - centers[i];
    const double d = dv.norm();
    if (d == 0.0 || d >= radii[i] + radii[j] || d <= std::abs(radii[i] - radii[j])) return std::nullopt;
    const double a = (d * d + radii[i] * radii[i] - radii[j] * radii[j]) / (2.0 * d);
    return std::make_pair(V3(centers[i] + a * dv / d), std::sqrt(radii[i] * radii[i] - a * a));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto c = sphere_pair(i, j);
      if (!c) continue;
      const V3 nrm = (centers[j] - centers[i]).normalized();
      const double ext = c->second * std::sqrt(std::max(0.0, 1.0 - nrm.z() * nrm.z()));
      breaks.push_back(c->first.z() - ext);
      breaks.push_back(c->first.z() + ext);
      for (std::size_t k = j + 1; k < n; ++k) {
        // Triple points: the pair circle meets sphere k.
        const V3 nk = centers[k] - centers[i];
        const double offk = 0.5 * (nk.squaredNorm() + radii[i] * radii[i] - radii[k] * radii[k]);
        // Points x = c + ρ(cosθ e1 + sinθ e2) with ⟨x − c_i, nk⟩ = offk.
        V3 e1 = nrm.unitOrthogonal();
        V3 e2 = nrm.cross(e1);
        const V3 rel = c->first - centers[i];
        const double p = c->second * e1.dot(nk), q = c->second * e2.dot(nk);
        const double rhs = offk - rel.dot(nk);
        const double amp = std::hypot(p, q);
        if (amp == 0.0 || std::abs(rhs) > amp) continue;
        const double base = std::atan2(q, p), delta = std::acos(rhs / amp);
        for (double th : {base + delta, base - delta}) {
          breaks.push_back((c->first + c->second * (std::cos(th) * e1 + std::sin(th) * e2)).z());
        }
      }
    }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const auto section = [&](double z) {
    std::vector<Circle> disks;
    for (std::size_t i = 0; i < n; ++i) {
      const double dz = z - centers[i].z();
      const double r2 = radii[i] * radii[i] - dz * dz;
      if (r2 > 0.0) disks.push_back({V2(centers[i].x(), centers[i].y()), std::sqrt(r2)});
    }
    return union_disks_area(disks);
  };
  double vol = 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    if (breaks[b + 1] - breaks[b] < 1e-15) continue;
    vol += integrator.integrate(section, breaks[b], breaks[b + 1], 1e-13);
  }
  return vol;
}

// 1 − ((√(5/3) − 1 − λ)/(11√(5/3) + 3 − λ))³ in extended precision.
inline long double theorem2_bound(long double lambda) {
  const long double s = std::sqrt(5.0L / 3.0L);
  const long double q = (s - 1.0L - lambda) / (11.0L * s + 3.0L - lambda);
  return 1.0L - q * q * q;
}

// Pseudo-random Monte Carlo fraction of the convex polygon `cell` (ccw)
// covered by the given gauge balls.
inline double mc_cell_coverage(const std::vector<V2>& cell, const std::vector<V2>& body,
                               const std::vector<V2>& centers, double radius, int samples,
                               std::uint64_t seed) {
  V2 lo = cell.front(), hi = cell.front();
  for (const auto& p : cell) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
  const auto in_cell = [&](const V2& x) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const V2 a = cell[i], b = cell[(i + 1) % cell.size()];
      if ((b - a).x() * (x - a).y() - (b - a).y() * (x - a).x() < 0.0) return false;
    }
    return true;
  };
  int in = 0, hit = 0;
  while (in < samples) {
    const V2 x(ux(rng), uy(rng));
    if (!in_cell(x)) continue;
    ++in;
    for (const auto& c : centers) {
      if (gauge(body, x - c) <= radius) { ++hit; break; }
    }
  }
  return static_cast<double>(hit) / in;
}

}  // namespace oracle
