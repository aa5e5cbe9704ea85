#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles/oracles.hpp"
#include "softpack/tess2d.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace softpack;

namespace {

std::vector<oracle::V2> verts(const ConvexBody2D& body) {
  return {body.vertices().begin(), body.vertices().end()};
}

double total_cell_area(const Delaunay2D& d) {
  double s = 0.0;
  for (const auto& c : d.cells) s += c.area();
  return s;
}

bool all_inside(const Rect& r, const std::vector<Vec2>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](const Vec2& p) { return r.contains(p); });
}

// Lattice and saturated configurations have circumradius below 2, so longer
// Delaunay edges only occur at the hull.
DelaunayOptions near_options() {
  DelaunayOptions opts;
  opts.max_edge = 4.5;
  return opts;
}

const Vec2 kTop(2.0, 1.2);

PackingConfig2D obtuse_config(bool with_fourth) {
  PackingConfig2D cfg{{{0, 0}, {4, 0}, kTop}, ConvexBody2D::euclidean(), Rect{-1, -4, 5, 2}};
  if (with_fourth) cfg.centers.emplace_back(2.0, -3.5);
  return cfg;
}

// Packing centers by random sequential addition, not saturated.
std::vector<Vec2> sparse_points(const ConvexBody2D& body, std::uint64_t seed, int count, double side) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Vec2> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Vec2 p(u(rng), u(rng));
    bool ok = true;
    for (const auto& q : pts) ok = ok && body.norm(p - q) >= 2.2;
    if (ok) pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("Delaunay: four co-circular centers") {
  const PackingConfig2D cfg{{{0, 0}, {2.5, 0}, {2.5, 2.5}, {0, 2.5}}, ConvexBody2D::euclidean(),
                            Rect{-1, -1, 3.5, 3.5}};
  const auto d = delaunay(cfg);
  CHECK(total_cell_area(d) == doctest::Approx(6.25).epsilon(1e-12));
  const bool one_square = d.cells.size() == 1 && d.cells[0].ids.size() == 4;
  const bool two_triangles = d.cells.size() == 2 && d.cells[0].ids.size() == 3 && d.cells[1].ids.size() == 3;
  CHECK((one_square || two_triangles));
}

TEST_CASE("Delaunay: single obtuse triangle") {
  const auto d = delaunay(obtuse_config(false));
  REQUIRE(d.cells.size() == 1);
  const auto exact = oracle::circumcircle({0, 0}, {4, 0}, kTop);
  CHECK(exact.center.x() == doctest::Approx(2.0));
  CHECK(exact.center.y() == doctest::Approx(-1.0666667).epsilon(1e-6));
  CHECK(exact.radius == doctest::Approx(2.2666667).epsilon(1e-6));
  const auto& h = d.cells[0].circumdisk;
  CHECK((h.center - exact.center).norm() < 3e-3);
  CHECK(h.radius == doctest::Approx(exact.radius).epsilon(1e-3));
}

TEST_CASE("Delaunay: windows with fewer than three centers") {
  const PackingConfig2D cfg{{{0, 0}, {4, 0}, kTop}, ConvexBody2D::euclidean(), Rect{-1, -1, 5, 1}};
  CHECK_THROWS_AS(delaunay(cfg), Error);
  try {
    delaunay(cfg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowTooSmall);
  }
}

TEST_CASE("Delaunay: rejects overlapping bodies") {
  const PackingConfig2D cfg{{{0, 0}, {1.5, 0}, {0, 3}}, ConvexBody2D::euclidean(), Rect{-1, -1, 4, 4}};
  try {
    delaunay(cfg);
    FAIL("expected NotAPacking");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAPacking);
  }
}

TEST_CASE("Delaunay: hexagonal lattice of the hexagon") {
  const auto hex = ConvexBody2D::hexagon();
  const EquilateralReference ref = equilateral_reference(hex, unit_direction(kPi / 6.0));
  const Vec2 u = ref.triangle[1] - ref.triangle[0];
  const Vec2 v = ref.triangle[2] - ref.triangle[0];
  const auto cfg = lattice_config(hex, u, v, Rect{0, 0, 14, 14}, Vec2(0.31, 0.17));
  const auto d = delaunay(cfg, near_options());
  const Rect inner = cfg.window.eroded(kErosionMargin);
  const double a0 = std::abs(cross(u, v)) / 2.0;
  // The lattice triangles have their vertices at alternate vertices of a unit
  // hexagon around the centroid.
  const auto hv = verts(hex);
  int interior = 0;
  for (const auto& c : d.cells) {
    if (!all_inside(inner, c.vertices)) continue;
    ++interior;
    CHECK(c.ids.size() == 3);
    CHECK(c.area() == doctest::Approx(a0).epsilon(1e-6));
    const Vec2 g = (c.vertices[0] + c.vertices[1] + c.vertices[2]) / 3.0;
    for (const auto& p : c.vertices) CHECK(oracle::gauge(hv, p - g) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(c.circumdisk.radius == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(interior > 10);
}

TEST_CASE("Delaunay agrees with the Euclidean brute force away from co-circularity") {
  const auto euclid = ConvexBody2D::euclidean();
  int compared = 0;
  for (std::uint64_t seed = 1; compared < 5 && seed < 200; ++seed) {
    const auto pts = sparse_points(euclid, seed, 8, 10.0);
    // The 96-gon gauge is within a factor 1 − cos(π/96) ≈ 5.4e-4 of the
    // Euclidean norm, so a larger relative margin fixes the combinatorics.
    if (oracle::cocircular_margin({pts.begin(), pts.end()}) < 1.5e-3) continue;
    const PackingConfig2D cfg{pts, euclid, Rect{0, 0, 10, 10}};
    const auto d = delaunay(cfg);
    std::set<std::array<int, 3>> got;
    for (const auto& c : d.cells) {
      REQUIRE(c.ids.size() == 3);
      std::array<int, 3> t{c.ids[0], c.ids[1], c.ids[2]};
      std::sort(t.begin(), t.end());
      got.insert(t);
    }
    const auto want = oracle::delaunay_triangles({pts.begin(), pts.end()});
    CHECK(got == std::set<std::array<int, 3>>(want.begin(), want.end()));
    ++compared;
  }
  CHECK(compared == 5);
}

TEST_CASE("Voronoi cells") {
  SUBCASE("square lattice under the max norm") {
    const auto sq = ConvexBody2D::square();
    const auto cfg = lattice_config(sq, Vec2(2, 0), Vec2(0, 2), Rect{-5, -5, 5, 5}, Vec2(0, 0));
    int mid = -1;
    for (std::size_t i = 0; i < cfg.centers.size(); ++i) {
      if (cfg.centers[i].norm() < 1e-12) mid = static_cast<int>(i);
    }
    REQUIRE(mid >= 0);
    const auto cell = voronoi_cell(cfg, mid);
    REQUIRE(cell.size() == 1);
    CHECK(area(cell[0]) == doctest::Approx(4.0).epsilon(1e-9));
    for (const auto& p : cell[0]) CHECK(std::max(std::abs(p.x()), std::abs(p.y())) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("triangular packing of the Euclidean surrogate") {
    const auto euclid = ConvexBody2D::euclidean();
    const auto cfg =
        lattice_config(euclid, Vec2(2, 0), Vec2(1, std::sqrt(3.0)), Rect{-6, -6, 6, 6}, Vec2(0, 0));
    int mid = -1;
    for (std::size_t i = 0; i < cfg.centers.size(); ++i) {
      if (cfg.centers[i].norm() < 1e-12) mid = static_cast<int>(i);
    }
    REQUIRE(mid >= 0);
    const auto cell = voronoi_cell(cfg, mid);
    REQUIRE(cell.size() == 1);
    // regular hexagon of inradius 1
    CHECK(area(cell[0]) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-3));
    double rmin = 1e9, rmax = 0.0;
    for (const auto& p : cell[0]) rmin = std::min(rmin, p.norm()), rmax = std::max(rmax, p.norm());
    CHECK(rmax == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-3));
  }
  SUBCASE("grid oracle for a center with three distant neighbors") {
    const auto body = ConvexBody2D::regular(12, 1.0, 0.13);
    const PackingConfig2D cfg{{{0, 0}, {4.1, 0.7}, {-2.3, 3.9}, {-1.2, -4.4}}, body, Rect{-6, -6, 6, 6}};
    const auto cell = voronoi_cell(cfg, 0);
    const auto bv = verts(body);
    int mismatches = 0, in_count = 0;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const Vec2 x(-6 + 12 * (i + 0.5) / 100, -6 + 12 * (j + 0.5) / 100);
        const double own = oracle::gauge(bv, x - cfg.centers[0]);
        double other = 1e300;
        for (int k = 1; k < 4; ++k) other = std::min(other, oracle::gauge(bv, x - cfg.centers[k]));
        if (std::abs(own - other) < 1e-6) continue;
        bool inside = false;
        for (const auto& piece : cell) inside = inside || contains_simple(piece, x);
        in_count += own < other;
        mismatches += inside != (own < other);
      }
    }
    CHECK(in_count > 100);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("separating sides") {
  const DelaunayCell acute{{0, 1, 2}, {{0, 0}, {2, 0}, {1, 1.5}}, {{1, 0.4}, 1.1}};
  CHECK(separating_sides(acute).empty());

  const auto c = oracle::circumcircle({0, 0}, {4, 0}, kTop);
  const DelaunayCell obtuse{{0, 1, 2}, {{0, 0}, {4, 0}, kTop}, {c.center, c.radius}};
  const auto sides = separating_sides(obtuse);
  REQUIRE(sides.size() == 1);
  CHECK(sides[0].p0 == Vec2(0, 0));
  CHECK(sides[0].p1 == Vec2(4, 0));

  // right angle: circumcenter on the hypotenuse, closed-cell convention
  const DelaunayCell right{{0, 1, 2}, {{0, 0}, {2, 0}, {0, 2}}, {{1, 1}, std::sqrt(2.0)}};
  CHECK(separating_sides(right).empty());
}

TEST_CASE("Molnar decomposition") {
  SUBCASE("no separating sides: cells equal Delaunay cells") {
    const auto hex = ConvexBody2D::hexagon();
    const auto ref = equilateral_reference(hex, unit_direction(kPi / 6.0));
    const auto cfg = lattice_config(hex, ref.triangle[1] - ref.triangle[0], ref.triangle[2] - ref.triangle[0],
                                    Rect{0, 0, 14, 14}, Vec2(0.2, 0.3));
    const auto t = tessellate(cfg, near_options());
    const Rect inner = cfg.window.eroded(kErosionMargin);
    // Hull cells at the window boundary may be obtuse; the lattice cells are not.
    for (const auto& br : t.molnar.bridges) {
      CHECK_FALSE(all_inside(inner, t.delaunay.cells[br.cell].vertices));
    }
    int interior = 0;
    for (const auto& cell : t.molnar.cells) {
      const auto& d = t.delaunay.cells[cell.delaunay_index];
      if (!all_inside(inner, d.vertices)) continue;
      ++interior;
      CHECK(cell.area() == doctest::Approx(d.area()).epsilon(1e-12));
    }
    CHECK(interior > 10);
  }
  SUBCASE("bridge across a shared separating side") {
    const auto t = tessellate(obtuse_config(true));
    REQUIRE(t.delaunay.cells.size() == 2);
    REQUIRE(t.molnar.bridges.size() == 1);
    const auto& br = t.molnar.bridges[0];
    const auto c = oracle::circumcircle({0, 0}, {4, 0}, kTop);
    CHECK((br.apex - c.center).norm() < 3e-3);
    // top cell gains triangle (0,0),(4,0),apex; bottom cell loses it
    const double gain = 0.5 * 4.0 * std::abs(br.apex.y());
    double top = 0.0, bottom = 0.0;
    for (const auto& cell : t.molnar.cells) {
      const auto& d = t.delaunay.cells[cell.delaunay_index];
      const bool is_top = std::find(d.ids.begin(), d.ids.end(), 2) != d.ids.end();
      (is_top ? top : bottom) = cell.area();
    }
    CHECK(top == doctest::Approx(2.4 + gain).epsilon(1e-12));
    CHECK(bottom == doctest::Approx(7.0 - gain).epsilon(1e-12));
    CHECK(top + bottom == doctest::Approx(9.4).epsilon(1e-12));
  }
}

TEST_CASE("refined cells") {
  SUBCASE("hexagonal lattice: congruent cells with midpoint apexes") {
    const auto hex = ConvexBody2D::hexagon();
    const auto ref = equilateral_reference(hex, unit_direction(kPi / 6.0));
    const auto cfg = lattice_config(hex, ref.triangle[1] - ref.triangle[0], ref.triangle[2] - ref.triangle[0],
                                    Rect{0, 0, 14, 14}, Vec2(0.2, 0.3));
    const auto t = tessellate(cfg, near_options());
    const Rect inner = cfg.window.eroded(kErosionMargin);
    // a third of a lattice triangle
    const double a0 = std::abs(cross(ref.triangle[1] - ref.triangle[0], ref.triangle[2] - ref.triangle[0])) / 6.0;
    int interior = 0;
    for (const auto& rc : t.refined) {
      if (!all_inside(inner, t.delaunay.cells[rc.delaunay_index].vertices)) continue;
      ++interior;
      CHECK(rc.cprime_is_midpoint);
      CHECK((rc.cprime - 0.5 * (rc.a + rc.b)).norm() < 1e-12);
      CHECK(rc.area() == doctest::Approx(a0).epsilon(1e-6));
    }
    CHECK(interior > 30);
  }
  SUBCASE("single triangle with a separating side") {
    const auto t = tessellate(obtuse_config(false));
    REQUIRE(t.refined.size() == 2);
    double sum = 0.0;
    int pieces = 0;
    for (const auto& rc : t.refined) {
      sum += rc.area();
      for (const auto& p : rc.pieces()) pieces += p.size() >= 3 && area(p) > 0.0;
    }
    CHECK(pieces == 4);
    CHECK(sum == doctest::Approx(t.molnar.cells[0].area()).epsilon(1e-12));
  }
}

TEST_CASE("equilateral reference triangles") {
  const auto hex = ConvexBody2D::hexagon();
  const auto r = equilateral_reference(hex, Vec2(1, 0));
  CHECK(r.edge_length == doctest::Approx(2.0).epsilon(1e-12));
  for (int k = 0; k < 3; ++k) {
    const Vec2 e = r.triangle[(k + 1) % 3] - r.triangle[k];
    CHECK(hex.norm(e) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.norm() == doctest::Approx(r.edge_length).epsilon(1e-12));
  }
  const auto euclid = ConvexBody2D::euclidean();
  for (double th : {0.0, 0.3, 1.1, 2.0}) {
    const auto re = equilateral_reference(euclid, unit_direction(th));
    CHECK(re.edge_length == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(re.circumradius == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-3));
  }
  const auto dodec = ConvexBody2D::regular(12);
  for (double th : {0.1, 0.77}) {
    const double r0 = equilateral_reference(dodec, unit_direction(th)).circumradius;
    const double r1 = equilateral_reference(dodec, unit_direction(th + 2.0 * kPi / 3.0)).circumradius;
    CHECK(r0 == doctest::Approx(r1).epsilon(1e-10));
  }
  CHECK_THROWS_AS(equilateral_reference(ConvexBody2D::square(), Vec2(1, 0)), Error);
}

TEST_CASE("random saturated configurations tile the eroded window") {
  for (const auto& body : {ConvexBody2D::regular(12), ConvexBody2D::euclidean()}) {
    for (std::uint64_t seed : {3u, 4u}) {
      const auto cfg = random_saturated_config(body, Rect{0, 0, 15.5, 15.5}, seed);
      CHECK_FALSE(cfg.unsaturated_sample(0.05).has_value());
      const auto t = tessellate(cfg, near_options());
      const Rect inner = cfg.window.eroded(kErosionMargin);
      CHECK(tiling_report(t, inner).max_relative_error() < 1e-6);
      CHECK_FALSE(check_bridges(t).has_value());
      CHECK_FALSE(check_circumdisks_empty(t).has_value());
      for (const auto& rc : t.refined) {
        if (!inner.contains(rc.a) || !inner.contains(rc.b) || !inner.contains(rc.c)) continue;
        const auto fail = check_refined_cell(rc, body, true);
        CHECK_MESSAGE(!fail.has_value(), fail.value_or(""));
      }
    }
  }
}

TEST_CASE("parallel edges trigger the deterministic jitter") {
  const auto sq = ConvexBody2D::square();
  const PackingConfig2D cfg{{{0, 0}, {2.5, 0}, {1.1, 2.3}, {3.7, 2.6}}, sq, Rect{-1, -1, 5, 4}};
  const auto a = delaunay(cfg);
  const auto b = delaunay(cfg);
  CHECK(a.jittered);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i] == b.points[i]);
    CHECK((a.points[i] - cfg.centers[i]).norm() < 1e-8);
  }
}
