#include "softpack/tess2d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace softpack {

namespace {

std::string fmt_point(const Vec2& p) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

// Deterministic offset in [-1,1]^2 derived from the center index.
Vec2 jitter_offset(std::size_t index) {
  const std::uint64_t h1 = mix_seed(0x5eedULL, 2 * index);
  const std::uint64_t h2 = mix_seed(0x5eedULL, 2 * index + 1);
  const double u = static_cast<double>(h1 >> 11) * 0x1.0p-53;
  const double v = static_cast<double>(h2 >> 11) * 0x1.0p-53;
  return {2.0 * u - 1.0, 2.0 * v - 1.0};
}

std::vector<DelaunayCell> build_cells(const std::vector<Vec2>& pts, const ConvexBody2D& body,
                                      const DelaunayOptions& options) {
  const int n = static_cast<int>(pts.size());
  const double tol = options.tol;
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = body.norm(pts[j] - pts[i]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  std::set<std::vector<int>> seen;
  std::vector<DelaunayCell> cells;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist[i * n + j] > options.max_edge) continue;
      for (int k = j + 1; k < n; ++k) {
        if (dist[i * n + k] > options.max_edge || dist[j * n + k] > options.max_edge) continue;
        const auto disk = gauge_circumdisk(body, pts[i], pts[j], pts[k], tol);
        if (!disk) continue;
        const double r = disk->radius;
        std::vector<int> group;
        bool empty = true;
        for (int m = 0; m < n; ++m) {
          const double d = body.norm(pts[m] - disk->center);
          if (d < r - tol) {
            empty = false;
            break;
          }
          if (d <= r + tol) group.push_back(m);
        }
        if (!empty) continue;
        if (!seen.insert(group).second) continue;
        const Vec2 mid = (pts[i] + pts[j] + pts[k]) / 3.0;
        std::sort(group.begin(), group.end(), [&](int p, int q) {
          const Vec2 dp = pts[p] - mid;
          const Vec2 dq = pts[q] - mid;
          return std::atan2(dp.y(), dp.x()) < std::atan2(dq.y(), dq.x());
        });
        DelaunayCell cell;
        cell.ids = group;
        for (int id : group) cell.vertices.push_back(pts[id]);
        cell.circumdisk = *disk;
        const std::size_t m = cell.vertices.size();
        for (std::size_t s = 0; s < m; ++s) {
          const Vec2& p = cell.vertices[s];
          const Vec2& q = cell.vertices[(s + 1) % m];
          const Vec2& w = cell.vertices[(s + 2) % m];
          if ((q - p).norm() <= tol || cross(q - p, w - q) <= 0.0) {
            throw Error(ErrorKind::DegeneratePosition,
                        "co-circular centers around " + fmt_point(disk->center) +
                            " do not form a strictly convex cell");
          }
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

bool has_parallel_edge(const std::vector<DelaunayCell>& cells, const ConvexBody2D& body) {
  for (const auto& cell : cells) {
    const std::size_t m = cell.vertices.size();
    for (std::size_t s = 0; s < m; ++s) {
      if (body.parallel_to_edge(cell.vertices[(s + 1) % m] - cell.vertices[s], 1e-9)) return true;
    }
  }
  return false;
}

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Separating side index per cell (-1 when none); throws on non-uniqueness.
std::vector<int> separating_side_index(const Delaunay2D& del, double tol) {
  std::vector<int> out(del.cells.size(), -1);
  for (std::size_t f = 0; f < del.cells.size(); ++f) {
    const auto sides = separating_sides(del.cells[f], tol);
    if (sides.size() > 1) {
      std::ostringstream os;
      os << "Delaunay cell " << f << " has " << sides.size()
         << " separating sides (circumcenter " << fmt_point(del.cells[f].circumdisk.center)
         << ")";
      throw Error(ErrorKind::UniquenessViolation, os.str());
    }
    if (!sides.empty()) out[f] = sides.front().side;
  }
  return out;
}

// For every cell side whose neighbor across it has that side as separating
// side, the neighbor index.
std::map<EdgeKey, int> separating_owner(const Delaunay2D& del, const std::vector<int>& sep) {
  std::map<EdgeKey, int> owner;
  for (std::size_t f = 0; f < del.cells.size(); ++f) {
    if (sep[f] < 0) continue;
    const auto& ids = del.cells[f].ids;
    const int k = sep[f];
    owner[edge_key(ids[k], ids[(k + 1) % ids.size()])] = static_cast<int>(f);
  }
  return owner;
}

}  // namespace

void PackingConfig2D::validate(double tol) const {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!centers[i].allFinite()) {
      throw Error(ErrorKind::InvalidConfig, "center " + std::to_string(i) + " is not finite");
    }
  }
  if (window.empty()) throw Error(ErrorKind::InvalidConfig, "window is empty");
  const double reach = 2.0 * body.circumradius();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const Vec2 d = centers[j] - centers[i];
      if (d.norm() > reach) continue;
      const double g = body.norm(d);
      if (g < 2.0 - tol) {
        std::ostringstream os;
        os.precision(12);
        os << "centers " << i << " and " << j << " are at gauge distance " << g << " < 2";
        throw Error(ErrorKind::NotAPacking, os.str());
      }
    }
  }
}

std::optional<Vec2> PackingConfig2D::unsaturated_sample(double grid_step) const {
  if (!(grid_step > 0.0)) throw Error(ErrorKind::InvalidInput, "grid step must be positive");
  const double reach = 2.0 * body.circumradius();
  const int nx = static_cast<int>(std::floor(window.width() / grid_step)) + 1;
  const int ny = static_cast<int>(std::floor(window.height() / grid_step)) + 1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 p(window.xmin + ix * grid_step, window.ymin + iy * grid_step);
      bool covered = false;
      for (const auto& c : centers) {
        const Vec2 d = p - c;
        if (d.norm() < reach && body.norm(d) < 2.0) {
          covered = true;
          break;
        }
      }
      if (!covered) return p;
    }
  }
  return std::nullopt;
}

double PackingConfig2D::diameter() const {
  if (centers.empty()) return 0.0;
  Vec2 lo = centers.front();
  Vec2 hi = centers.front();
  for (const auto& c : centers) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  return (hi - lo).norm();
}

Delaunay2D delaunay(const PackingConfig2D& config, const DelaunayOptions& options) {
  config.validate(options.tol);
  int interior = 0;
  for (const auto& c : config.centers) interior += config.window.contains(c) ? 1 : 0;
  if (interior < 3) {
    throw Error(ErrorKind::WindowTooSmall,
                "window holds " + std::to_string(interior) + " centers, need at least 3");
  }
  Delaunay2D out;
  out.points = config.centers;
  out.cells = build_cells(out.points, config.body, options);
  if (options.allow_jitter && has_parallel_edge(out.cells, config.body)) {
    const double scale = 1e-9 * std::max(config.diameter(), 1.0);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      out.points[i] += scale * jitter_offset(i);
    }
    out.jittered = true;
    out.cells = build_cells(out.points, config.body, options);
  }
  if (out.cells.empty()) {
    throw Error(ErrorKind::DegeneratePosition, "no Delaunay cells (centers collinear?)");
  }
  return out;
}

std::vector<Polygon> voronoi_cell(const PackingConfig2D& config, int center_index,
                                  double tol) {
  const int n = static_cast<int>(config.centers.size());
  if (center_index < 0 || center_index >= n) {
    throw Error(ErrorKind::InvalidInput, "center index out of range");
  }
  const Vec2 c = config.centers[center_index];
  const auto& w = config.body.facet_functionals();
  std::vector<int> order;
  for (int j = 0; j < n; ++j) {
    if (j == center_index) continue;
    if ((config.centers[j] - c).norm() <= tol) {
      throw Error(ErrorKind::CoincidentCenters,
                  "centers " + std::to_string(center_index) + " and " + std::to_string(j) +
                      " coincide");
    }
    order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return config.body.norm(config.centers[a] - c) < config.body.norm(config.centers[b] - c);
  });

  std::vector<Polygon> cell{config.window.polygon()};
  const auto reach = [&]() {
    double r = 0.0;
    for (const auto& piece : cell) {
      for (const auto& p : piece) r = std::max(r, config.body.norm(p - c));
    }
    return r;
  };
  double bound = reach();
  for (int j : order) {
    const Vec2 cj = config.centers[j];
    if (config.body.norm(cj - c) > 2.0 * bound) break;
    Rect box{cell.front().front().x(), cell.front().front().y(), cell.front().front().x(),
             cell.front().front().y()};
    for (const auto& piece : cell) {
      for (const auto& p : piece) {
        box.xmin = std::min(box.xmin, p.x());
        box.ymin = std::min(box.ymin, p.y());
        box.xmax = std::max(box.xmax, p.x());
        box.ymax = std::max(box.ymax, p.y());
      }
    }
    const Rect grown{box.xmin - 1.0, box.ymin - 1.0, box.xmax + 1.0, box.ymax + 1.0};
    // {x : ‖x−c‖ <= ‖x−cj‖} is the union over facets k of the regions where
    // facet k attains ‖x−cj‖ and every facet functional of x−c stays below it.
    std::vector<Polygon> dominance;
    for (std::size_t k = 0; k < w.size(); ++k) {
      Polygon region = grown.polygon();
      for (std::size_t e = 0; e < w.size() && !region.empty(); ++e) {
        region = clip_halfplane(region, w[e] - w[k], w[e].dot(c) - w[k].dot(cj));
      }
      if (region.size() >= 3 && area(region) > 0.0) dominance.push_back(std::move(region));
    }
    cell = polygon_intersection(cell, polygon_union(dominance));
    if (cell.empty()) {
      throw Error(ErrorKind::NumericalDegeneracy, "Voronoi cell vanished");
    }
    bound = reach();
  }
  return cell;
}

std::vector<Edge2D> separating_sides(const DelaunayCell& cell, double tol) {
  std::vector<Edge2D> out;
  const Vec2& o = cell.circumdisk.center;
  const std::size_t m = cell.vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& p0 = cell.vertices[k];
    const Vec2& p1 = cell.vertices[(k + 1) % m];
    const Vec2 edge = p1 - p0;
    const double len = edge.norm();
    if (len == 0.0) continue;
    if (cross(edge, o - p0) / len < -tol) {
      out.push_back({static_cast<int>(k), cell.ids[k], cell.ids[(k + 1) % m], p0, p1});
    }
  }
  return out;
}

Polygon MolnarCell::polygon() const {
  Polygon out;
  out.reserve(boundary.size());
  for (const auto& v : boundary) out.push_back(v.point);
  return out;
}

Molnar2D molnar_decomposition(const Delaunay2D& del, double tol) {
  const auto sep = separating_side_index(del, tol);
  const auto owner = separating_owner(del, sep);
  Molnar2D out;
  for (std::size_t f = 0; f < del.cells.size(); ++f) {
    const auto& cell = del.cells[f];
    const std::size_t m = cell.ids.size();
    MolnarCell mc;
    mc.delaunay_index = static_cast<int>(f);
    for (std::size_t k = 0; k < m; ++k) {
      const int a = cell.ids[k];
      const int b = cell.ids[(k + 1) % m];
      mc.boundary.push_back({cell.vertices[k], VertexKind::Center, a});
      if (sep[f] == static_cast<int>(k)) {
        mc.boundary.push_back({cell.circumdisk.center, VertexKind::BridgeApex, static_cast<int>(f)});
        out.bridges.push_back({static_cast<int>(f), a, b, cell.vertices[k],
                               cell.circumdisk.center, cell.vertices[(k + 1) % m]});
        continue;
      }
      const auto it = owner.find(edge_key(a, b));
      if (it != owner.end() && it->second != static_cast<int>(f)) {
        const int g = it->second;
        mc.boundary.push_back({del.cells[g].circumdisk.center, VertexKind::BridgeApex, g});
      }
    }
    out.cells.push_back(std::move(mc));
  }
  return out;
}

std::array<Polygon, 2> RefinedCell::pieces() const {
  return {Polygon{a, cprime, c}, Polygon{cprime, b, c}};
}

double RefinedCell::area() const {
  const Polygon outer{a, b, c};
  const Polygon inner{a, b, cprime};
  return signed_area(outer) - signed_area(inner);
}

std::vector<RefinedCell> refined_molnar(const Delaunay2D& del, const Molnar2D& molnar,
                                        double tol) {
  (void)molnar;
  const auto sep = separating_side_index(del, tol);
  const auto owner = separating_owner(del, sep);
  std::vector<RefinedCell> out;
  for (std::size_t f = 0; f < del.cells.size(); ++f) {
    const auto& cell = del.cells[f];
    const std::size_t m = cell.ids.size();
    const Vec2& o = cell.circumdisk.center;
    for (std::size_t k = 0; k < m; ++k) {
      if (sep[f] == static_cast<int>(k)) continue;
      RefinedCell rc;
      rc.a = cell.vertices[k];
      rc.b = cell.vertices[(k + 1) % m];
      rc.a_id = cell.ids[k];
      rc.b_id = cell.ids[(k + 1) % m];
      rc.c = o;
      rc.delaunay_index = static_cast<int>(f);
      const auto it = owner.find(edge_key(rc.a_id, rc.b_id));
      if (it != owner.end() && it->second != static_cast<int>(f)) {
        rc.cprime = del.cells[it->second].circumdisk.center;
        rc.cprime_is_midpoint = false;
      } else {
        rc.cprime = 0.5 * (rc.a + rc.b);
        rc.cprime_is_midpoint = true;
      }
      const double scale = std::max(1.0, (rc.b - rc.a).squaredNorm());
      if (rc.area() <= tol * scale) continue;
      out.push_back(rc);
    }
  }
  return out;
}

Tessellation2D tessellate(const PackingConfig2D& config, const DelaunayOptions& options) {
  Tessellation2D t{config, delaunay(config, options), {}, {}};
  t.molnar = molnar_decomposition(t.delaunay, options.tol);
  t.refined = refined_molnar(t.delaunay, t.molnar, options.tol);
  return t;
}

EquilateralReference equilateral_reference(const ConvexBody2D& body, const Vec2& direction) {
  if (!body.threefold()) {
    throw Error(ErrorKind::BodyNotThreefold, "body does not carry the threefold flag");
  }
  const double len = direction.norm();
  if (!(len > 0.0) || !direction.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "direction must be a nonzero vector");
  }
  const Vec2 u = direction / len;
  const double e = 2.0 / body.norm(u);
  EquilateralReference ref;
  ref.triangle = {Vec2::Zero(), e * u, e * rotate(u, kPi / 3.0)};
  ref.circumcenter = (ref.triangle[0] + ref.triangle[1] + ref.triangle[2]) / 3.0;
  ref.circumradius = body.norm(ref.triangle[0] - ref.circumcenter);
  ref.edge_length = e;
  return ref;
}

double TilingReport::max_relative_error() const {
  if (window_area <= 0.0) return 0.0;
  return std::max({std::abs(delaunay_area - window_area), std::abs(molnar_area - window_area),
                   std::abs(refined_area - window_area)}) /
         window_area;
}

TilingReport tiling_report(const Tessellation2D& tess, const Rect& window) {
  TilingReport rep;
  const Polygon w = window.polygon();
  rep.window_area = window.area();
  for (const auto& cell : tess.delaunay.cells) {
    rep.delaunay_area += signed_area(clip_convex(cell.vertices, w));
  }
  for (const auto& cell : tess.molnar.cells) {
    rep.molnar_area += signed_area(clip_convex(cell.polygon(), w));
  }
  for (const auto& cell : tess.refined) {
    for (const auto& piece : cell.pieces()) rep.refined_area += signed_area(clip_convex(piece, w));
  }
  return rep;
}

std::optional<std::string> check_bridges(const Tessellation2D& tess, double tol) {
  struct Seg {
    Vec2 p;
    Vec2 q;
  };
  std::vector<Seg> edges;
  for (const auto& cell : tess.molnar.cells) {
    const auto poly = cell.polygon();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      edges.push_back({poly[i], poly[(i + 1) % poly.size()]});
    }
  }
  const auto same = [tol](const Vec2& x, const Vec2& y) { return (x - y).norm() <= tol; };
  const auto point_seg = [](const Vec2& x, const Vec2& a, const Vec2& b) {
    return segment_distance(x, x, a, b);
  };
  for (std::size_t bi = 0; bi < tess.molnar.bridges.size(); ++bi) {
    const auto& br = tess.molnar.bridges[bi];
    const Seg parts[2] = {{br.p0, br.apex}, {br.apex, br.p1}};
    for (const auto& s : parts) {
      for (const auto& e : edges) {
        if ((same(s.p, e.p) && same(s.q, e.q)) || (same(s.p, e.q) && same(s.q, e.p))) continue;
        if (segment_distance(s.p, s.q, e.p, e.q) > tol) continue;
        // Touching is allowed only at a shared endpoint, without overlap.
        Vec2 shared;
        Vec2 s_other;
        Vec2 e_other;
        if (same(s.p, e.p)) {
          shared = s.p, s_other = s.q, e_other = e.q;
        } else if (same(s.p, e.q)) {
          shared = s.p, s_other = s.q, e_other = e.p;
        } else if (same(s.q, e.p)) {
          shared = s.q, s_other = s.p, e_other = e.q;
        } else if (same(s.q, e.q)) {
          shared = s.q, s_other = s.p, e_other = e.p;
        } else {
          return "bridge " + std::to_string(bi) + " crosses edge " + fmt_point(e.p) + "-" +
                 fmt_point(e.q);
        }
        if (point_seg(s_other, shared, e_other) <= tol || point_seg(e_other, shared, s_other) <= tol) {
          return "bridge " + std::to_string(bi) + " overlaps edge " + fmt_point(e.p) + "-" +
                 fmt_point(e.q);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_circumdisks_empty(const Tessellation2D& tess, double tol) {
  const auto& pts = tess.delaunay.points;
  for (std::size_t f = 0; f < tess.delaunay.cells.size(); ++f) {
    const auto& cell = tess.delaunay.cells[f];
    for (std::size_t m = 0; m < pts.size(); ++m) {
      if (std::find(cell.ids.begin(), cell.ids.end(), static_cast<int>(m)) != cell.ids.end()) {
        continue;
      }
      const double d = tess.config.body.norm(pts[m] - cell.circumdisk.center);
      if (d < cell.circumdisk.radius - tol) {
        return "center " + std::to_string(m) + " lies inside the circumdisk of cell " +
               std::to_string(f);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_refined_cell(const RefinedCell& cell, const ConvexBody2D& body,
                                              bool saturated, double tol) {
  std::ostringstream os;
  os.precision(12);
  const double ac = body.norm(cell.a - cell.c);
  const double bc = body.norm(cell.b - cell.c);
  if (std::abs(ac - bc) > tol * std::max(1.0, ac)) {
    os << "‖a−c‖ = " << ac << " differs from ‖b−c‖ = " << bc;
    return os.str();
  }
  const double acp = body.norm(cell.a - cell.cprime);
  const double bcp = body.norm(cell.b - cell.cprime);
  if (std::abs(acp - bcp) > tol * std::max(1.0, acp)) {
    os << "‖a−c′‖ = " << acp << " differs from ‖b−c′‖ = " << bcp;
    return os.str();
  }
  const double ab = body.norm(cell.a - cell.b);
  if (ab < 2.0 - tol) {
    os << "‖a−b‖ = " << ab << " < 2";
    return os.str();
  }
  const Polygon tri{cell.a, cell.b, cell.c};
  if (!contains_convex(tri, cell.cprime, tol * std::max(1.0, ab))) {
    os << "c′ = " << fmt_point(cell.cprime) << " lies outside conv{a,b,c}";
    return os.str();
  }
  if (saturated) {
    if (ac >= 2.0 + tol) {
      os << "‖a−c‖ = " << ac << " >= 2 in a saturated packing";
      return os.str();
    }
    if (body.threefold()) {
      const double r = equilateral_reference(body, cell.b - cell.a).circumradius;
      if (ac < r - tol) {
        os << "‖a−c‖ = " << ac << " < R(a,b) = " << r;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

PackingConfig2D random_saturated_config(const ConvexBody2D& body, const Rect& window,
                                        std::uint64_t seed, double grid_step) {
  if (window.empty()) throw Error(ErrorKind::InvalidConfig, "window is empty");
  PackingConfig2D config{{}, body, window};
  const double cell = 2.0 * body.circumradius();
  const int gx = static_cast<int>(std::ceil(window.width() / cell)) + 1;
  const int gy = static_cast<int>(std::ceil(window.height() / cell)) + 1;
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(gx) * gy);
  const auto bucket_of = [&](const Vec2& p) {
    const int ix = std::clamp(static_cast<int>((p.x() - window.xmin) / cell), 0, gx - 1);
    const int iy = std::clamp(static_cast<int>((p.y() - window.ymin) / cell), 0, gy - 1);
    return std::pair{ix, iy};
  };
  const auto fits = [&](const Vec2& p) {
    const auto [ix, iy] = bucket_of(p);
    for (int y = std::max(0, iy - 1); y <= std::min(gy - 1, iy + 1); ++y) {
      for (int x = std::max(0, ix - 1); x <= std::min(gx - 1, ix + 1); ++x) {
        for (int id : buckets[y * gx + x]) {
          if (body.norm(p - config.centers[id]) < 2.0) return false;
        }
      }
    }
    return true;
  };
  const auto add = [&](const Vec2& p) {
    const auto [ix, iy] = bucket_of(p);
    buckets[iy * gx + ix].push_back(static_cast<int>(config.centers.size()));
    config.centers.push_back(p);
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(window.xmin, window.xmax);
  std::uniform_real_distribution<double> uy(window.ymin, window.ymax);
  int failures = 0;
  for (int attempt = 0; attempt < 400000 && failures < 5000; ++attempt) {
    const Vec2 p(ux(rng), uy(rng));
    if (fits(p)) {
      add(p);
      failures = 0;
    } else {
      ++failures;
    }
  }
  const int nx = static_cast<int>(std::floor(window.width() / grid_step)) + 1;
  const int ny = static_cast<int>(std::floor(window.height() / grid_step)) + 1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 p(window.xmin + ix * grid_step, window.ymin + iy * grid_step);
      if (fits(p)) add(p);
    }
  }
  return config;
}

PackingConfig2D lattice_config(const ConvexBody2D& body, const Vec2& u, const Vec2& v,
                               const Rect& window, const Vec2& offset) {
  Mat2 basis;
  basis << u, v;
  if (std::abs(basis.determinant()) <= 1e-12 * u.norm() * v.norm()) {
    throw Error(ErrorKind::InvalidInput, "lattice basis is degenerate");
  }
  const Mat2 inv = basis.inverse();
  double lo[2] = {1e300, 1e300};
  double hi[2] = {-1e300, -1e300};
  for (const auto& corner : window.polygon()) {
    const Vec2 k = inv * (corner - offset);
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], k[d]);
      hi[d] = std::max(hi[d], k[d]);
    }
  }
  PackingConfig2D config{{}, body, window};
  for (long j = static_cast<long>(std::floor(lo[1])) - 1; j <= static_cast<long>(std::ceil(hi[1])) + 1; ++j) {
    for (long i = static_cast<long>(std::floor(lo[0])) - 1; i <= static_cast<long>(std::ceil(hi[0])) + 1; ++i) {
      const Vec2 p = offset + static_cast<double>(i) * u + static_cast<double>(j) * v;
      if (window.contains(p, 1e-12)) config.centers.push_back(p);
    }
  }
  return config;
}

}  // namespace softpack
