#include "softpack/soft2d.hpp"

#include "softpack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace softpack {

namespace {

// Area of X ∩ (A ∪ B) for a (signed) polygon X and convex A, B.
double covered_signed_area(const Polygon& x, const Polygon& a, const Polygon& b) {
  const Polygon xa = clip_convex(x, a);
  const Polygon xb = clip_convex(x, b);
  const Polygon xab = clip_convex(xa, b);
  return signed_area(xa) + signed_area(xb) - signed_area(xab);
}

// Coefficient bound so that every lattice vector of Euclidean length <= len
// has |k_i| <= bound[i].
std::array<long, 2> coefficient_bounds(const Mat2& basis, double len) {
  const Mat2 inv = basis.inverse();
  return {static_cast<long>(std::ceil(len * inv.row(0).norm())),
          static_cast<long>(std::ceil(len * inv.row(1).norm()))};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Endpoints of the chord {s·n + t·d} ∩ τ∂M, ordered (t > 0 first).
std::pair<Vec2, Vec2> chord(const ConvexBody2D& body, double tau, const Vec2& d, const Vec2& n,
                            double s) {
  double t_hi = 1e300;
  double t_lo = -1e300;
  for (const auto& w : body.facet_functionals()) {
    const double wd = w.dot(d);
    const double room = tau - s * w.dot(n);
    if (wd > 0.0) {
      t_hi = std::min(t_hi, room / wd);
    } else if (wd < 0.0) {
      t_lo = std::max(t_lo, room / wd);
    }
  }
  return {s * n + t_hi * d, s * n + t_lo * d};
}

// Boundary samples of the arc between boundary angles a0 < a1 (including the
// vertices of M inside the arc).
std::vector<Vec2> arc_samples(const ConvexBody2D& body, double a0, double a1, bool endpoints) {
  std::vector<double> angles;
  const int k = 48;
  for (int i = endpoints ? 0 : 1; i <= (endpoints ? k : k - 1); ++i) {
    angles.push_back(a0 + (a1 - a0) * i / k);
  }
  for (const auto& v : body.vertices()) {
    double t = std::atan2(v.y(), v.x());
    while (t < a0) t += 2.0 * kPi;
    if (t > a0 && t < a1) angles.push_back(t);
  }
  std::vector<Vec2> out;
  out.reserve(angles.size());
  for (double t : angles) out.push_back(body.boundary_point(t));
  return out;
}

}  // namespace

Lattice2D reduce(const Lattice2D& lattice) {
  Vec2 u = lattice.u;
  Vec2 v = lattice.v;
  if (std::abs(cross(u, v)) <= 1e-14 * u.squaredNorm() * v.squaredNorm()) {
    throw Error(ErrorKind::InvalidInput, "lattice basis vectors are linearly dependent");
  }
  for (int it = 0; it < 1000; ++it) {
    if (u.squaredNorm() > v.squaredNorm()) std::swap(u, v);
    const double m = std::round(u.dot(v) / u.squaredNorm());
    if (m == 0.0) break;
    v -= m * u;
  }
  if (cross(u, v) < 0.0) v = -v;
  return {u, v};
}

double min_gauge_vector(const Lattice2D& lattice, const ConvexBody2D& body) {
  const Lattice2D red = reduce(lattice);
  Mat2 basis;
  basis << red.u, red.v;
  double best = body.norm(red.u);
  // Anything of gauge <= best has Euclidean length <= best·circumradius.
  const auto bound = coefficient_bounds(basis, best * body.circumradius());
  for (long i = -bound[0]; i <= bound[0]; ++i) {
    for (long j = -bound[1]; j <= bound[1]; ++j) {
      if (i == 0 && j == 0) continue;
      best = std::min(best, body.norm(static_cast<double>(i) * red.u + static_cast<double>(j) * red.v));
    }
  }
  return best;
}

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw Error(ErrorKind::InvalidInput, "soft parameter must be finite and >= 0, got " + fmt(lambda));
  }
}

double cell_soft_density(const RefinedCell& cell, const ConvexBody2D& body, double lambda) {
  check_lambda(lambda);
  const double total = cell.area();
  if (!(total > 1e-14)) {
    throw Error(ErrorKind::ZeroAreaCell, "refined cell has area " + fmt(total));
  }
  const Polygon ma = body.homothet(cell.a, 1.0 + lambda);
  const Polygon mb = body.homothet(cell.b, 1.0 + lambda);
  double covered = 0.0;
  for (const auto& piece : cell.pieces()) covered += covered_signed_area(piece, ma, mb);
  return std::clamp(covered / total, 0.0, 1.0);
}

double triangle_soft_density(const Vec2& a, const Vec2& b, const Vec2& c,
                             const ConvexBody2D& body, double lambda) {
  check_lambda(lambda);
  Polygon tri{a, b, c};
  const double total = signed_area(tri);
  if (std::abs(total) <= 1e-14) throw Error(ErrorKind::ZeroAreaCell, "triangle is degenerate");
  if (total < 0.0) std::swap(tri[1], tri[2]);
  const double covered =
      covered_signed_area(tri, body.homothet(a, 1.0 + lambda), body.homothet(b, 1.0 + lambda));
  return std::clamp(covered / std::abs(total), 0.0, 1.0);
}

double lattice_soft_density(const Lattice2D& lattice, const ConvexBody2D& body, double lambda,
                            double tol) {
  check_lambda(lambda);
  const Lattice2D red = reduce(lattice);
  const double shortest = min_gauge_vector(red, body);
  if (shortest < 2.0 - tol) {
    throw Error(ErrorKind::NotAPacking,
                "shortest lattice vector has gauge norm " + fmt(shortest) + " < 2");
  }
  Mat2 basis;
  basis << red.u, red.v;
  const double det = std::abs(basis.determinant());
  const Polygon cell{Vec2::Zero(), red.u, red.u + red.v, red.v};
  const double reach = (1.0 + lambda) * body.circumradius();
  const auto bound = coefficient_bounds(basis, reach);
  const Polygon soft = body.homothet(Vec2::Zero(), 1.0 + lambda);
  std::vector<Polygon> pieces;
  for (long i = -bound[0]; i <= 1 + bound[0]; ++i) {
    for (long j = -bound[1]; j <= 1 + bound[1]; ++j) {
      const Vec2 w = static_cast<double>(i) * red.u + static_cast<double>(j) * red.v;
      Polygon piece = clip_convex(translated(soft, w), cell);
      if (piece.size() >= 3 && area(piece) > 0.0) pieces.push_back(std::move(piece));
    }
  }
  return std::clamp(covered_area(cell, pieces) / det, 0.0, 1.0);
}

Lattice2D reference_lattice(const ConvexBody2D& body, double theta) {
  const auto ref = equilateral_reference(body, unit_direction(theta));
  return {ref.triangle[1] - ref.triangle[0], ref.triangle[2] - ref.triangle[0]};
}

OptimalLattice optimal_lattice_search(const ConvexBody2D& body, double lambda,
                                      int direction_samples, unsigned threads) {
  if (!body.threefold()) {
    throw Error(ErrorKind::BodyNotThreefold, "optimal lattice search needs a threefold body");
  }
  check_lambda(lambda);
  if (direction_samples < 1) throw Error(ErrorKind::InvalidInput, "need at least one direction");
  const double period = 2.0 * kPi / 3.0;
  const double step = period / direction_samples;
  const auto density_at = [&](double theta) {
    return lattice_soft_density(reference_lattice(body, theta), body, lambda);
  };
  OptimalLattice out;
  out.sample_densities.resize(direction_samples);
  parallel_for(direction_samples, threads,
               [&](std::size_t k) { out.sample_densities[k] = density_at(step * k); });
  const auto best_it = std::max_element(out.sample_densities.begin(), out.sample_densities.end());
  const int best = static_cast<int>(best_it - out.sample_densities.begin());
  out.theta = step * best;
  out.density = *best_it;

  // Golden-section refinement on the bracket around the best sample.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = out.theta - step;
  double hi = out.theta + step;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = density_at(x1);
  double f2 = density_at(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 >= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = density_at(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = density_at(x2);
    }
  }
  const double xm = f1 >= f2 ? x1 : x2;
  const double fm = std::max(f1, f2);
  if (fm > out.density) {
    out.density = fm;
    out.theta = xm;
  }
  out.theta = std::fmod(out.theta, period);
  if (out.theta < 0.0) out.theta += period;
  out.lattice = reference_lattice(body, out.theta);
  return out;
}

WindowDensity window_soft_density(const Tessellation2D& tess, double lambda, const Rect& region) {
  check_lambda(lambda);
  WindowDensity out;
  double covered = 0.0;
  for (const auto& cell : tess.refined) {
    if (!region.contains(cell.a) || !region.contains(cell.b) || !region.contains(cell.c) ||
        !region.contains(cell.cprime)) {
      continue;
    }
    const double a = cell.area();
    covered += a * cell_soft_density(cell, tess.config.body, lambda);
    out.area += a;
    ++out.cells_counted;
  }
  out.density = out.area > 0.0 ? covered / out.area : 0.0;
  return out;
}

LemmaReport lemma_legs_check(const ConvexBody2D& body, double lambda, int trials,
                             std::uint64_t seed, double tol) {
  check_lambda(lambda);
  LemmaReport rep;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int draw = 0; draw < 1000; ++draw) {
      const Vec2 d = unit_direction(2.0 * kPi * unit(rng));
      const double len = 2.0 + unit(rng);
      const Vec2 a = Vec2::Zero();
      const Vec2 b = len * d / body.norm(d);
      const double mu_p = 0.5 * len + 0.02 + 1.2 * unit(rng);
      const double mu = mu_p + 0.001 + 1.5 * unit(rng);
      const Vec2 c = bisector_point_at_distance(body, a, b, mu);
      const Vec2 cp = bisector_point_at_distance(body, a, b, mu_p);
      const Polygon tri{a, b, c};
      if (!contains_convex(tri, cp, 0.0) || signed_area(Polygon{a, b, cp}) <= 1e-9) {
        ++rep.resampled;
        continue;
      }
      const double rho = triangle_soft_density(a, b, c, body, lambda);
      const double rho_p = triangle_soft_density(a, b, cp, body, lambda);
      const double excess = rho - rho_p;
      rep.max_excess = rep.trials == 0 ? excess : std::max(rep.max_excess, excess);
      ++rep.trials;
      if (excess > tol) {
        ++rep.violations;
        rep.failures.push_back("trial " + std::to_string(t) + ": rho(T) = " + fmt(rho) +
                               " > rho(T') = " + fmt(rho_p));
      } else if (std::abs(excess) <= tol) {
        ++rep.equality_cases;
        if (rho < 1.0 - tol) ++rep.equality_mismatches;
      }
      break;
    }
  }
  return rep;
}

LemmaReport lemma_base_check(const ConvexBody2D& body, double lambda, int trials,
                             std::uint64_t seed, double tol) {
  check_lambda(lambda);
  LemmaReport rep;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double tau = 1.0 + lambda + 0.02 + unit(rng);
    const Vec2 d = unit_direction(2.0 * kPi * unit(rng));
    const Vec2 n(-d.y(), d.x());
    const auto gauge_len = [&](double s) {
      const auto [p, q] = chord(body, tau, d, n, s);
      return body.norm(p - q);
    };
    // Largest offset whose chord still has gauge length 2.
    double lo = 0.0;
    double hi = tau / body.norm(n);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (gauge_len(mid) >= 2.0 ? lo : hi) = mid;
    }
    const double s_max = lo;
    const double s_min = 0.02 * s_max;
    const double gap = 0.001 * s_max;
    const double s_p = s_min + gap + (s_max - s_min - gap) * unit(rng);
    const double s = s_min + (s_p - gap - s_min) * unit(rng);
    const auto [a, b] = chord(body, tau, d, n, s);
    const auto [ap, bp] = chord(body, tau, d, n, s_p);
    const Vec2 c = Vec2::Zero();
    const double rho = triangle_soft_density(a, b, c, body, lambda);
    const double rho_p = triangle_soft_density(ap, bp, c, body, lambda);
    const double excess = rho - rho_p;
    rep.max_excess = rep.trials == 0 ? excess : std::max(rep.max_excess, excess);
    ++rep.trials;
    if (excess > tol) {
      ++rep.violations;
      rep.failures.push_back("trial " + std::to_string(t) + ": rho(T) = " + fmt(rho) +
                             " > rho(T') = " + fmt(rho_p));
    } else if (std::abs(excess) <= tol) {
      ++rep.equality_cases;
      ++rep.equality_mismatches;  // the bases always differ here
    }
  }
  return rep;
}

ArcReport linear_map_arc_check(const ConvexBody2D& body, const ArcQuadruple& q, double tol) {
  const Vec2 x = body.boundary_point(q.x);
  const Vec2 xp = body.boundary_point(q.xp);
  const Vec2 yp = body.boundary_point(q.yp);
  const Vec2 y = body.boundary_point(q.y);
  const Vec2 pts[4] = {x, xp, yp, y};
  const double scale = body.circumradius();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if ((pts[i] + pts[j]).norm() <= 1e-9 * scale) {
        throw Error(ErrorKind::DegenerateQuadruple, "two points of the quadruple are antipodal");
      }
    }
  }
  if ((xp - yp).norm() <= 1e-12 * scale || !(q.x <= q.xp && q.xp < q.yp && q.yp <= q.y) ||
      q.y - q.x >= kPi) {
    throw Error(ErrorKind::DegenerateQuadruple,
                "quadruple must satisfy x <= x' < y' <= y on an arc shorter than a half turn");
  }
  Mat2 from;
  from << x, y;
  Mat2 to;
  to << xp, yp;
  const Mat2 map = to * from.inverse();

  ArcReport rep;
  rep.trials = 1;
  rep.min_outer_norm = 1e300;
  rep.max_inner_norm = 0.0;
  for (const auto& p : arc_samples(body, q.x, q.y, true)) {
    rep.min_outer_norm = std::min(rep.min_outer_norm, body.norm(map * p));
  }
  for (const auto& p : arc_samples(body, q.y, q.x + kPi, false)) {
    rep.max_inner_norm = std::max(rep.max_inner_norm, body.norm(map * p));
  }
  for (const auto& p : arc_samples(body, q.y + kPi, q.x + 2.0 * kPi, false)) {
    rep.max_inner_norm = std::max(rep.max_inner_norm, body.norm(map * p));
  }
  if (rep.min_outer_norm < 1.0 - tol || rep.max_inner_norm > 1.0 + tol) {
    rep.violations = 1;
    rep.failures.push_back("outer arc min gauge " + fmt(rep.min_outer_norm) +
                           ", inner arcs max gauge " + fmt(rep.max_inner_norm));
  }
  return rep;
}

ArcReport linear_map_arc_check(const ConvexBody2D& body, int trials, std::uint64_t seed,
                               double tol) {
  ArcReport rep;
  rep.min_outer_norm = 1e300;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ArcQuadruple q;
    q.x = 2.0 * kPi * unit(rng);
    const double span = 0.1 + (kPi - 0.2) * unit(rng);
    double u1 = span * unit(rng);
    double u2 = span * unit(rng);
    if (u1 > u2) std::swap(u1, u2);
    const double mode = unit(rng);
    if (mode < 0.25) {
      u1 = 0.0;
    } else if (mode < 0.5) {
      u2 = span;
    }
    if (u2 - u1 < 0.01) u2 = std::min(span, u1 + 0.01), u1 = u2 - 0.01;
    q.xp = q.x + u1;
    q.yp = q.x + u2;
    q.y = q.x + span;
    const ArcReport one = linear_map_arc_check(body, q, tol);
    ++rep.trials;
    rep.violations += one.violations;
    rep.min_outer_norm = std::min(rep.min_outer_norm, one.min_outer_norm);
    rep.max_inner_norm = std::max(rep.max_inner_norm, one.max_inner_norm);
    for (const auto& f : one.failures) rep.failures.push_back("trial " + std::to_string(t) + ": " + f);
  }
  return rep;
}

}  // namespace softpack
