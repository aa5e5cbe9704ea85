#include "softpack/polygon.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

#include <algorithm>

namespace softpack {

namespace {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint, false, true>;
using BMulti = bg::model::multi_polygon<BPoly>;

BPoly to_boost(std::span<const Vec2> poly) {
  BPoly out;
  auto& ring = out.outer();
  ring.reserve(poly.size() + 1);
  for (const auto& p : poly) ring.emplace_back(p.x(), p.y());
  if (!poly.empty()) ring.emplace_back(poly.front().x(), poly.front().y());
  bg::correct(out);
  return out;
}

BMulti to_boost_multi(std::span<const Polygon> pieces) {
  BMulti acc;
  for (const auto& piece : pieces) {
    if (piece.size() < 3 || area(piece) <= 0.0) continue;
    BMulti next;
    bg::union_(acc, to_boost(piece), next);
    acc = std::move(next);
  }
  return acc;
}

std::vector<Polygon> from_boost(const BMulti& multi) {
  std::vector<Polygon> out;
  for (const auto& poly : multi) {
    Polygon loop;
    const auto& ring = poly.outer();
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      loop.emplace_back(ring[i].x(), ring[i].y());
    }
    if (signed_area(loop) < 0.0) std::reverse(loop.begin(), loop.end());
    if (loop.size() >= 3) out.push_back(std::move(loop));
  }
  return out;
}

}  // namespace

double signed_area(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 centroid(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  Vec2 mean = Vec2::Zero();
  if (n == 0) return mean;
  for (const auto& p : poly) mean += p;
  mean /= static_cast<double>(n);
  double a = 0.0;
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i] - mean;
    const Vec2 q = poly[(i + 1) % n] - mean;
    const double w = cross(p, q);
    a += w;
    acc += w * (p + q);
  }
  if (std::abs(a) <= 1e-300) return mean;
  return mean + acc / (3.0 * a);
}

Polygon clip_halfplane(std::span<const Vec2> poly, const Vec2& normal, double offset) {
  Polygon out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double sp = normal.dot(p) - offset;
    const double sq = normal.dot(q) - offset;
    const bool pin = sp <= 0.0;
    const bool qin = sq <= 0.0;
    if (pin) out.push_back(p);
    if (pin != qin) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> convex) {
  Polygon out(subject.begin(), subject.end());
  const std::size_t m = convex.size();
  for (std::size_t i = 0; i < m && !out.empty(); ++i) {
    const Vec2& a = convex[i];
    const Vec2& b = convex[(i + 1) % m];
    const Vec2 edge = b - a;
    if (edge.squaredNorm() == 0.0) continue;
    const Vec2 normal(edge.y(), -edge.x());
    out = clip_halfplane(out, normal, normal.dot(a));
  }
  return out;
}

bool contains_convex(std::span<const Vec2> convex, const Vec2& p, double tol) {
  const std::size_t m = convex.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = convex[i];
    const Vec2& b = convex[(i + 1) % m];
    const Vec2 edge = b - a;
    const double len = edge.norm();
    if (len == 0.0) continue;
    if (cross(edge, p - a) / len < -tol) return false;
  }
  return true;
}

bool contains_simple(std::span<const Vec2> poly, const Vec2& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

Polygon translated(std::span<const Vec2> poly, const Vec2& shift) {
  Polygon out;
  out.reserve(poly.size());
  for (const auto& p : poly) out.push_back(p + shift);
  return out;
}

Polygon convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (p.size() < 3) return p;
  Polygon hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Polygon> subtract_convex(std::span<const Polygon> parts, std::span<const Vec2> piece,
                                     double min_area) {
  std::vector<Polygon> out;
  // Clipping leaves nearly collinear vertices whose tiny edges have
  // meaningless normals; the hull drops them.
  const Polygon convex = convex_hull(piece);
  const std::size_t m = convex.size();
  if (m < 3) return {parts.begin(), parts.end()};
  for (const auto& part : parts) {
    const Polygon overlap = clip_convex(part, convex);
    if (overlap.size() < 3 || area(overlap) <= min_area) {
      out.push_back(part);
      continue;
    }
    // part \ K = ∪_i (part ∩ outside edge i ∩ inside edges before i).
    Polygon rest = part;
    for (std::size_t i = 0; i < m && rest.size() >= 3; ++i) {
      const Vec2& a = convex[i];
      const Vec2& b = convex[(i + 1) % m];
      Vec2 normal(b.y() - a.y(), a.x() - b.x());
      normal /= normal.norm();
      const double offset = normal.dot(a);
      Polygon outside = clip_halfplane(rest, -normal, -offset);
      if (outside.size() >= 3 && area(outside) > min_area) out.push_back(std::move(outside));
      rest = clip_halfplane(rest, normal, offset);
    }
  }
  return out;
}

double covered_area(std::span<const Vec2> region, std::span<const Polygon> pieces) {
  const double total = area(region);
  const double min_area = 1e-15 * total;
  std::vector<Polygon> open{Polygon(region.begin(), region.end())};
  for (const auto& piece : pieces) {
    if (open.empty()) break;
    open = subtract_convex(open, piece, min_area);
  }
  return total - total_area(open);
}

std::vector<Polygon> polygon_union(std::span<const Polygon> pieces) {
  return from_boost(to_boost_multi(pieces));
}

std::vector<Polygon> polygon_intersection(std::span<const Polygon> a,
                                          std::span<const Polygon> b) {
  BMulti out;
  bg::intersection(to_boost_multi(a), to_boost_multi(b), out);
  return from_boost(out);
}

double total_area(std::span<const Polygon> pieces) {
  double sum = 0.0;
  for (const auto& p : pieces) sum += area(p);
  return sum;
}

double segment_distance(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
  const auto point_segment = [](const Vec2& x, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (x - (a + t * ab)).norm();
  };
  const double d1 = cross(p1 - p0, q0 - p0);
  const double d2 = cross(p1 - p0, q1 - p0);
  const double d3 = cross(q1 - q0, p0 - q0);
  const double d4 = cross(q1 - q0, p1 - q0);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return 0.0;
  }
  return std::min({point_segment(p0, q0, q1), point_segment(p1, q0, q1),
                   point_segment(q0, p0, p1), point_segment(q1, p0, p1)});
}

}  // namespace softpack
