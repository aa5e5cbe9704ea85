#include "softpack/gauge2d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <sstream>

namespace softpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void invalid_body(const std::string& invariant, const std::string& detail) {
  throw Error(ErrorKind::InvalidBody, invariant + " (" + detail + ")");
}

}  // namespace

ConvexBody2D::ConvexBody2D(std::vector<Vec2> vertices, bool threefold, double tol)
    : vertices_(std::move(vertices)), threefold_(threefold) {
  const std::size_t n = vertices_.size();
  if (n < 4) invalid_body("vertex_count", "need at least 4 vertices, got " + std::to_string(n));
  for (const auto& v : vertices_) {
    if (!v.allFinite()) invalid_body("finite_coordinates", "non-finite vertex");
    circumradius_ = std::max(circumradius_, v.norm());
  }
  const double scale = std::max(circumradius_, 1e-300);

  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (e0.norm() <= tol * scale) {
      invalid_body("strict_convexity", "repeated vertex at index " + std::to_string(i + 1));
    }
    const double c = cross(e0, e1);
    if (c <= tol * scale * scale) {
      invalid_body("strict_convexity",
                   "vertex " + std::to_string((i + 1) % n) +
                       " is not a strictly convex counterclockwise turn");
    }
    turning += std::atan2(c, e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6) {
    invalid_body("counterclockwise", "boundary winds more than once");
  }

  functionals_.reserve(n);
  inradius_ = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 normal(e.y(), -e.x());
    const double h = normal.dot(vertices_[i]);
    if (h <= tol * scale * e.norm()) {
      invalid_body("origin_interior", "origin is not interior to edge " + std::to_string(i));
    }
    functionals_.push_back(normal / h);
    inradius_ = std::min(inradius_, h / e.norm());
  }

  if (n % 2 != 0) invalid_body("central_symmetry", "odd vertex count");
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    if ((vertices_[i] + vertices_[i + half]).norm() > tol * scale * 10.0) {
      invalid_body("central_symmetry",
                   "vertex " + std::to_string(i + half) + " is not the negation of vertex " +
                       std::to_string(i));
    }
  }

  if (threefold_) {
    if (n % 6 != 0) invalid_body("threefold_symmetry", "vertex count not a multiple of 6");
    const std::size_t third = n / 3;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 rotated = rotate(vertices_[i], 2.0 * kPi / 3.0);
      if ((rotated - vertices_[(i + third) % n]).norm() > tol * scale * 10.0) {
        invalid_body("threefold_symmetry",
                     "rotation by 120 degrees does not map vertex " + std::to_string(i) +
                         " onto the vertex set");
      }
    }
  }

  area_ = signed_area(vertices_);
}

ConvexBody2D ConvexBody2D::regular(int n, double circumradius, double phase) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidBody, "central_symmetry (regular polygon needs even n >= 4)");
  }
  std::vector<Vec2> vertices(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int k = 0; k < half; ++k) {
    const double angle = phase + 2.0 * kPi * k / n;
    vertices[k] = circumradius * unit_direction(angle);
    vertices[k + half] = -vertices[k];
  }
  return ConvexBody2D(std::move(vertices), n % 6 == 0);
}

ConvexBody2D ConvexBody2D::square() {
  return ConvexBody2D({{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}}, false);
}

double ConvexBody2D::norm(const Vec2& x) const {
  double best = 0.0;
  for (const auto& w : functionals_) best = std::max(best, w.dot(x));
  return best;
}

Vec2 ConvexBody2D::boundary_point(double angle) const {
  const Vec2 u = unit_direction(angle);
  return u / norm(u);
}

Polygon ConvexBody2D::homothet(const Vec2& center, double radius) const {
  Polygon out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(center + radius * v);
  return out;
}

bool ConvexBody2D::parallel_to_edge(const Vec2& dir, double tol) const {
  const double len = dir.norm();
  if (len == 0.0) return false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = vertices_[(i + 1) % n] - vertices_[i];
    if (std::abs(cross(e, dir)) <= tol * e.norm() * len) return true;
  }
  return false;
}

double gauge_norm(const ConvexBody2D& body, const Vec2& x) { return body.norm(x); }

double ray_bisector_distance(const ConvexBody2D& body, const Vec2& a, const Vec2& v,
                             const Vec2& q) {
  // ‖a + r v − q‖ − r = max_k (α_k + r (β_k − 1)) is nonincreasing in r; its
  // root is the largest of the per-facet roots α_k / (1 − β_k).
  const Vec2 d = a - q;
  const double dnorm = body.norm(d);
  double r = 0.0;
  for (const auto& w : body.facet_functionals()) {
    const double alpha = w.dot(d);
    const double slack = 1.0 - w.dot(v);
    if (slack > 1e-13) {
      r = std::max(r, alpha / slack);
    } else if (alpha > 1e-13 * dnorm) {
      return kInf;
    }
  }
  return r;
}

std::optional<Homothet2D> gauge_circumdisk(const ConvexBody2D& body, const Vec2& a,
                                           const Vec2& b, const Vec2& c, double tol) {
  const double scale = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
  if (scale == 0.0) return std::nullopt;
  Vec2 q = b;
  Vec2 s = c;
  const double orient = cross(b - a, c - a);
  if (std::abs(orient) <= tol * scale * scale) return std::nullopt;
  if (orient < 0.0) std::swap(q, s);

  // Along rays from a, Δ(θ) = r_q(θ) − r_s(θ) runs from −∞ (only the bisector
  // with q is reachable) to +∞ (only the one with s is) counterclockwise; its
  // crossing is the circumcenter direction.
  const auto delta = [&](double theta) {
    const Vec2 v = body.boundary_point(theta);
    const double rq = ray_bisector_distance(body, a, v, q);
    const double rs = ray_bisector_distance(body, a, v, s);
    if (rq == kInf && rs == kInf) return std::numeric_limits<double>::quiet_NaN();
    if (rq == kInf) return kInf;
    if (rs == kInf) return -kInf;
    return rq - rs;
  };

  constexpr int kSamples = 96;
  const double start = std::atan2((q - a).y(), (q - a).x()) - kPi;
  std::vector<double> thetas(kSamples + 1);
  std::vector<double> values(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) {
    thetas[k] = start + 2.0 * kPi * k / kSamples;
    values[k] = delta(thetas[k]);
  }

  std::optional<Homothet2D> best;
  double best_residual = kInf;
  const auto consider = [&](const Vec2& center) {
    const double ra = body.norm(a - center);
    const double rb = body.norm(b - center);
    const double rc = body.norm(c - center);
    const double residual = std::max({std::abs(ra - rb), std::abs(ra - rc), std::abs(rb - rc)});
    if (residual < best_residual) {
      best_residual = residual;
      best = Homothet2D{center, (ra + rb + rc) / 3.0};
    }
  };

  for (int k = 0; k < kSamples; ++k) {
    if (!(values[k] < 0.0 && values[k + 1] > 0.0)) continue;
    double lo = thetas[k];
    double hi = thetas[k + 1];
    for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double dm = delta(mid);
      if (std::isnan(dm)) break;
      if (dm < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double theta = 0.5 * (lo + hi);
    const Vec2 v = body.boundary_point(theta);
    double r = ray_bisector_distance(body, a, v, q);
    if (r == kInf) r = ray_bisector_distance(body, a, v, s);
    if (r == kInf) continue;
    Vec2 center = a + r * v;
    consider(center);

    // Active-facet polish: solve w_i·(p_i − c) = r exactly for the facets
    // currently attaining each norm.
    for (int pass = 0; pass < 2; ++pass) {
      const auto active = [&](const Vec2& p) {
        const auto& ws = body.facet_functionals();
        std::size_t arg = 0;
        double val = -kInf;
        for (std::size_t i = 0; i < ws.size(); ++i) {
          const double x = ws[i].dot(p - center);
          if (x > val) {
            val = x;
            arg = i;
          }
        }
        return ws[arg];
      };
      Eigen::Matrix3d m;
      Eigen::Vector3d rhs;
      const Vec2 pts[3] = {a, b, c};
      for (int i = 0; i < 3; ++i) {
        const Vec2 w = active(pts[i]);
        m.row(i) << w.x(), w.y(), 1.0;
        rhs(i) = w.dot(pts[i]);
      }
      const Eigen::Vector3d sol = m.fullPivLu().solve(rhs);
      if (!sol.allFinite()) break;
      center = Vec2(sol(0), sol(1));
      consider(center);
    }
  }
  if (best && best_residual > 1e-6 * scale) return std::nullopt;
  return best;
}

Vec2 bisector_point(const ConvexBody2D& body, const Vec2& a, const Vec2& b, double offset) {
  const Vec2 ab = b - a;
  const double len = ab.norm();
  const Vec2 u = ab / len;
  const Vec2 nu(-u.y(), u.x());
  const Vec2 base = 0.5 * (a + b) + offset * nu;
  const auto g = [&](double t) {
    const Vec2 x = base + t * u;
    return body.norm(x - a) - body.norm(x - b);
  };
  double step = len + std::abs(offset) + 1.0;
  double lo = -step;
  double hi = step;
  for (int i = 0; i < 200 && g(lo) > 0.0; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && g(hi) < 0.0; ++i) hi *= 2.0;
  for (int it = 0; it < 300 && hi - lo > 1e-16 * (std::abs(lo) + std::abs(hi) + 1.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return base + 0.5 * (lo + hi) * u;
}

Vec2 bisector_point_at_distance(const ConvexBody2D& body, const Vec2& a, const Vec2& b,
                                double mu) {
  const double half = 0.5 * body.norm(b - a);
  if (mu <= half) return 0.5 * (a + b);
  double lo = 0.0;
  double hi = mu * body.circumradius() * 2.0 + 1.0;
  for (int i = 0; i < 200 && body.norm(bisector_point(body, a, b, hi) - a) < mu; ++i) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (hi + 1.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (body.norm(bisector_point(body, a, b, mid) - a) < mu) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return bisector_point(body, a, b, 0.5 * (lo + hi));
}

Homothet2D smallest_enclosing_homothet(const ConvexBody2D& body,
                                       std::span<const Vec2> points, double tol) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "smallest_enclosing_homothet: no points");
  if (points.size() == 1) return {points[0], 0.0};
  if (points.size() == 2) {
    return {0.5 * (points[0] + points[1]), 0.5 * body.norm(points[1] - points[0])};
  }

  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    hi = std::max(hi, body.norm(points[i] - points[0]));
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      lo = std::max(lo, 0.5 * body.norm(points[j] - points[i]));
    }
  }
  if (hi <= tol) return {points[0], hi};

  // Feasible centers for radius r: ∩_i (p_i + rM), using M = −M.
  const auto feasible = [&](double r) {
    Polygon k = body.homothet(points[0], r);
    for (std::size_t i = 1; i < points.size() && !k.empty(); ++i) {
      k = clip_convex(k, body.homothet(points[i], r));
    }
    return k;
  };
  hi *= 1.0 + 1e-12;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Polygon k = feasible(mid);
    if (k.size() >= 3 && signed_area(k) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const Polygon k = feasible(hi);
  const Vec2 center = k.empty() ? points[0] : centroid(k);
  double radius = 0.0;
  for (const auto& p : points) radius = std::max(radius, body.norm(p - center));
  return {center, radius};
}

}  // namespace softpack
