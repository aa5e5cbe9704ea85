#include "softpack/io.hpp"
#include "softpack/lat3d.hpp"
#include "softpack/parallel.hpp"
#include "softpack/soft2d.hpp"
#include "softpack/softvol3d.hpp"
#include "softpack/tess2d.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace softpack;
using nlohmann::json;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::string out;  // output directory; stdout when empty
  int samples = 720;
  unsigned threads = 0;
};

// Writes `name` into the output directory, or to stdout without one.
void emit(const RunConfig& run, const std::string& name, const std::string& content) {
  if (run.out.empty()) {
    std::cout << content;
  } else {
    write_file(std::filesystem::path(run.out) / name, content);
  }
}

std::string blank_or(double v) { return std::isnan(v) ? std::string() : format_number(v); }

json vec_json(const Vec2& p) { return {p.x(), p.y()}; }
json vec_json(const Vec3& p) { return {p.x(), p.y(), p.z()}; }

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

json lemma_json(const LemmaReport& r) {
  return {{"trials", r.trials},
          {"violations", r.violations},
          {"equality_cases", r.equality_cases},
          {"equality_mismatches", r.equality_mismatches},
          {"resampled", r.resampled},
          {"max_excess", r.max_excess},
          {"failures", r.failures}};
}

double angle_mod(double theta, double period) {
  double t = std::fmod(theta, period);
  if (t < 0.0) t += period;
  return t;
}

const std::vector<std::string> kSoft2dHeader = {"lambda", "density", "direction_theta",
                                                "cells_counted"};

// --- soft2d ---------------------------------------------------------------

struct Soft2dArgs {
  std::string body = "euclid";
  std::string lattice;
  std::string lambda = "0.1";
  std::string config;
  std::string svg;
  std::string json_path;
  std::optional<double> window_lambda;
  double window = 17.0;
  bool soft_bodies = false;
  int trials = 1000;
  int arc_trials = 500;
  double max_edge = std::numeric_limits<double>::infinity();
};

void soft2d_density(const RunConfig& run, const Soft2dArgs& a) {
  const ConvexBody2D body = load_body(a.body);
  const Lattice2D lat = load_lattice2d(a.lattice.empty() ? "tri" : a.lattice, body);
  const double theta = angle_mod(std::atan2(lat.u.y(), lat.u.x()), 2.0 * kPi);
  std::string csv = csv_row(kSoft2dHeader);
  for (double lambda : parse_range(a.lambda)) {
    const double d = lattice_soft_density(lat, body, lambda, run.tol);
    csv += csv_row({format_number(lambda), format_number(d), format_number(theta), ""});
  }
  emit(run, "density.csv", csv);
}

// Optimal lattice per λ for threefold bodies, or a fixed lattice with --lattice.
void soft2d_sweep(const RunConfig& run, const Soft2dArgs& a, const std::string& name) {
  const ConvexBody2D body = load_body(a.body);
  const std::vector<double> lambdas = parse_range(a.lambda);
  for (double lambda : lambdas) check_lambda(lambda);
  std::string csv = csv_row(kSoft2dHeader);
  if (!a.lattice.empty()) {
    const Lattice2D lat = load_lattice2d(a.lattice, body);
    const double theta = angle_mod(std::atan2(lat.u.y(), lat.u.x()), 2.0 * kPi);
    std::vector<double> dens(lambdas.size());
    parallel_for(lambdas.size(), run.threads, [&](std::size_t i) {
      dens[i] = lattice_soft_density(lat, body, lambdas[i], run.tol);
    });
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      csv += csv_row({format_number(lambdas[i]), format_number(dens[i]), format_number(theta), ""});
    }
  } else {
    for (double lambda : lambdas) {
      const OptimalLattice best = optimal_lattice_search(body, lambda, run.samples, run.threads);
      csv += csv_row({format_number(lambda), format_number(best.density), format_number(best.theta), ""});
    }
  }
  emit(run, name, csv);
}

void soft2d_decompose(const RunConfig& run, const Soft2dArgs& a) {
  DelaunayOptions opts;
  opts.tol = run.tol;
  opts.max_edge = a.max_edge;
  const PackingConfig2D config =
      a.config.empty()
          ? random_saturated_config(load_body(a.body), Rect{0.0, 0.0, a.window, a.window}, run.seed)
          : load_config(a.config);
  if (a.config.empty() && !std::isfinite(opts.max_edge)) opts.max_edge = 4.5;
  const Tessellation2D tess = tessellate(config, opts);
  const Rect inner = config.window.eroded(kErosionMargin);
  json summary;
  summary["centers"] = config.centers.size();
  summary["delaunay_cells"] = tess.delaunay.cells.size();
  summary["bridges"] = tess.molnar.bridges.size();
  summary["refined_cells"] = tess.refined.size();
  summary["jittered"] = tess.delaunay.jittered;
  if (!inner.empty()) {
    const TilingReport tr = tiling_report(tess, inner);
    summary["tiling"] = {{"window_area", tr.window_area},
                         {"delaunay_area", tr.delaunay_area},
                         {"molnar_area", tr.molnar_area},
                         {"refined_area", tr.refined_area},
                         {"max_relative_error", tr.max_relative_error()}};
  }
  const auto bridges = check_bridges(tess);
  const auto empty = check_circumdisks_empty(tess);
  summary["bridges_disjoint"] = !bridges.has_value();
  summary["circumdisks_empty"] = !empty.has_value();
  if (bridges) summary["bridge_failure"] = *bridges;
  if (empty) summary["circumdisk_failure"] = *empty;
  if (a.window_lambda) {
    check_lambda(*a.window_lambda);
    const WindowDensity wd = window_soft_density(tess, *a.window_lambda, inner);
    summary["window_density"] = {{"lambda", *a.window_lambda},
                                 {"density", wd.density},
                                 {"area", wd.area},
                                 {"cells_counted", wd.cells_counted}};
  }
  if (!a.json_path.empty()) write_file(a.json_path, tessellation_json(tess));
  if (!a.svg.empty()) {
    SvgOptions svg;
    if (a.soft_bodies && a.window_lambda) svg.soft_lambda = *a.window_lambda;
    write_file(a.svg, tessellation_svg(tess, svg));
  }
  if (a.config.empty() && !run.out.empty()) emit(run, "config.json", config_json(config));
  emit(run, "decompose.json", summary.dump(2) + "\n");
}

void soft2d_lemmas(const RunConfig& run, const Soft2dArgs& a) {
  const ConvexBody2D body = load_body(a.body);
  json report;
  report["body_vertices"] = body.vertices().size();
  report["lambdas"] = json::array();
  const double tol = run.tol;
  for (double lambda : parse_range(a.lambda)) {
    check_lambda(lambda);
    report["lambdas"].push_back({{"lambda", lambda},
                                 {"legs", lemma_json(lemma_legs_check(body, lambda, a.trials, run.seed, tol))},
                                 {"base", lemma_json(lemma_base_check(body, lambda, a.trials, run.seed, tol))}});
  }
  const ArcReport arc = linear_map_arc_check(body, a.arc_trials, run.seed, tol);
  report["arc"] = {{"trials", arc.trials},
                   {"violations", arc.violations},
                   {"min_outer_norm", arc.min_outer_norm},
                   {"max_inner_norm", arc.max_inner_norm},
                   {"failures", arc.failures}};
  emit(run, "lemmas.json", report.dump(2) + "\n");
}

// --- soft3d ---------------------------------------------------------------

struct Soft3dArgs {
  std::string lattice;
  std::string lambda = "0:0.29:30";
  int trials = 200;
  std::vector<double> t_values = {1e-3, 1e-2};
  double fd_tolerance = 1e-3;
  int clusters = 100;
  std::string off;
};

void soft3d_curve(const RunConfig& run, const Soft3dArgs& a) {
  const std::vector<double> lambdas = parse_range(a.lambda);
  for (double lambda : lambdas) check_lambda(lambda);
  std::optional<Lattice3D> custom;
  if (!a.lattice.empty() && a.lattice != "fcc" && a.lattice != "bcc") custom = load_lattice(a.lattice);
  const Lattice3D fcc = Lattice3D::fcc();
  const Lattice3D bcc = Lattice3D::bcc();
  std::vector<std::array<double, 4>> rows(lambdas.size());
  parallel_for(lambdas.size(), run.threads, [&](std::size_t i) {
    const double l = lambdas[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rows[i] = {soft_density_3d(fcc, l, run.tol), soft_density_3d(bcc, l, run.tol),
               l > 0.0 && l < kSqrt53 - 1.0 ? theorem2_bound(l) : nan,
               custom ? soft_density_3d(*custom, l, run.tol) : nan};
  });
  std::vector<std::string> header = {"lambda", "rho_fcc", "rho_bcc", "bound_thm2"};
  if (custom) header.push_back("rho_lattice");
  std::string csv = csv_row(header);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    std::vector<std::string> cells = {format_number(lambdas[i]), format_number(rows[i][0]),
                                      format_number(rows[i][1]), blank_or(rows[i][2])};
    if (custom) cells.push_back(format_number(rows[i][3]));
    csv += csv_row(cells);
  }
  emit(run, "curve.csv", csv);
}

void soft3d_bound(const RunConfig& run, const Soft3dArgs& a) {
  std::string csv = csv_row({"lambda", "bound_thm2"});
  for (double lambda : parse_range(a.lambda)) {
    csv += csv_row({format_number(lambda), format_number(theorem2_bound(lambda))});
  }
  emit(run, "bound.csv", csv);
}

void soft3d_localmax(const RunConfig& run, const Soft3dArgs& a) {
  const double lambda = parse_range(a.lambda).front();
  const LocalMaxReport rep =
      local_max_experiment(lambda, a.trials, a.t_values, run.seed, run.threads, a.fd_tolerance);
  json j;
  j["lambda"] = rep.lambda;
  j["seed"] = run.seed;
  j["rho0"] = rep.rho0;
  j["wall"] = rep.wall;
  j["face"] = rep.face;
  j["numerator"] = rep.numerator;
  j["denominator"] = rep.denominator;
  j["fd_step"] = rep.fd_step;
  j["t_values"] = rep.t_values;
  j["violations"] = rep.violations;
  j["trials"] = json::array();
  for (const auto& t : rep.trials) {
    j["trials"].push_back({{"S", mat_json(t.s)},
                           {"speeds", t.speeds},
                           {"resamples", t.resamples},
                           {"raw_fd_slope", t.raw_fd_slope},
                           {"analytic", t.analytic},
                           {"fd", t.fd},
                           {"relative_error", t.relative_error},
                           {"numerator_analytic", t.numerator_analytic},
                           {"numerator_fd", t.numerator_fd},
                           {"denominator_analytic", t.denominator_analytic},
                           {"denominator_fd", t.denominator_fd},
                           {"rho_t", t.rho_t},
                           {"min_vector_t", t.min_vector_t},
                           {"pass", t.pass}});
  }
  emit(run, "localmax.json", j.dump(2) + "\n");
  std::cerr << "localmax: " << rep.trials.size() << " trials, " << rep.violations << " violations\n";
}

// Random clusters of 2 to 5 balls; compares the wall formula with a central
// difference of the union volume along a random motion.
void soft3d_csikos(const RunConfig& run, const Soft3dArgs& a) {
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(std::max(a.clusters, 0)));
  parallel_for(rows.size(), run.threads, [&](std::size_t k) {
    std::mt19937_64 rng(mix_seed(run.seed, k));
    std::uniform_real_distribution<double> box(-1.2, 1.2);
    std::uniform_real_distribution<double> rad(0.8, 1.2);
    std::normal_distribution<double> gauss;
    const int n = 2 + static_cast<int>(k % 4);
    BallCluster cl;
    std::vector<Vec3> vel;
    for (int i = 0; i < n; ++i) {
      cl.centers.emplace_back(box(rng), box(rng), box(rng));
      cl.radii.push_back(rad(rng));
      vel.emplace_back(gauss(rng), gauss(rng), gauss(rng));
    }
    const double analytic = csikos_derivative(csikos_walls(cl, run.tol), pair_speeds(cl, vel));
    const double h = 1e-5;
    auto moved = [&](double t) {
      BallCluster c = cl;
      for (int i = 0; i < n; ++i) c.centers[i] += t * vel[i];
      return union_volume(c, run.tol);
    };
    const double fd = (moved(h) - moved(-h)) / (2.0 * h);
    const double rel = std::abs(analytic - fd) / std::max(std::abs(fd), 1e-12);
    rows[k] = {std::to_string(k), std::to_string(n), format_number(analytic), format_number(fd),
               format_number(rel)};
  });
  std::string csv = csv_row({"cluster", "balls", "analytic", "fd", "relative_error"});
  for (const auto& r : rows) csv += csv_row(r);
  emit(run, "csikos.csv", csv);
}

void soft3d_cell(const RunConfig& run, const Soft3dArgs& a) {
  const Lattice3D lat = load_lattice(a.lattice.empty() ? "fcc" : a.lattice);
  const Polyhedron3D cell = dv_cell(lat, run.tol);
  if (!a.off.empty()) write_file(a.off, to_off(cell));
  json j;
  j["determinant"] = std::abs(lat.determinant());
  j["volume"] = cell.volume();
  j["min_vector"] = min_vector_length(lat);
  j["covering_radius"] = covering_radius(lat);
  j["vertices"] = cell.vertices.size();
  j["edges"] = cell.edge_count();
  j["faces"] = json::array();
  for (std::size_t f = 0; f < cell.faces.size(); ++f) {
    j["faces"].push_back({{"generator", vec_json(cell.faces[f].generator)},
                          {"normal", vec_json(cell.faces[f].normal)},
                          {"area", cell.face_area(f)}});
  }
  emit(run, "cell.json", j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft densities of soft-ball packings"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig run;
  app.add_option("--seed", run.seed, "random seed");
  app.add_option("--tol", run.tol, "geometric tolerance");
  app.add_option("--out", run.out, "output directory (default: stdout)");
  app.add_option("--samples", run.samples, "edge directions sampled by the lattice search");
  app.add_option("--threads", run.threads, "worker threads (0 = all cores)");

  Soft2dArgs d2, sw2, op2, dc2, lm2;
  sw2.lambda = "0:0.16:33";
  op2.body = "dodecagon";
  op2.lambda = "0.05";
  lm2.lambda = "0.05:0.15:3";
  auto* s2 = app.add_subcommand("soft2d", "2D translative packings under a gauge norm");
  s2->require_subcommand(1);
  s2->fallthrough();
  auto* density = s2->add_subcommand("density", "soft density of a lattice packing");
  density->add_option("--body", d2.body, "preset (euclid, hexagon, square, dodecagon) or JSON file");
  density->add_option("--lattice", d2.lattice, "tri, square, or JSON file");
  density->add_option("--lambda", d2.lambda, "value or start:stop:count");
  auto* sweep = s2->add_subcommand("sweep", "density curve over a lambda range");
  sweep->add_option("--body", sw2.body);
  sweep->add_option("--lattice", sw2.lattice, "fixed lattice instead of the direction search");
  sweep->add_option("--lambda", sw2.lambda);
  auto* optimal = s2->add_subcommand("optimal", "best equilateral-reference lattice per lambda");
  optimal->add_option("--body", op2.body);
  optimal->add_option("--lambda", op2.lambda);
  auto* decompose = s2->add_subcommand("decompose", "Delaunay, Molnar and refined decompositions");
  decompose->add_option("--config", dc2.config, "config JSON; a random saturated one otherwise");
  decompose->add_option("--body", dc2.body, "body of the random configuration");
  decompose->add_option("--window", dc2.window, "side of the random configuration's window");
  decompose->add_option("--max-edge", dc2.max_edge, "longest Delaunay edge tried (gauge length)");
  decompose->add_option("--lambda", dc2.window_lambda, "also report the window soft density");
  decompose->add_option("--svg", dc2.svg, "SVG figure path");
  decompose->add_option("--json", dc2.json_path, "typed-vertex export path");
  decompose->add_flag("--soft-bodies", dc2.soft_bodies, "draw the soft bodies in the SVG");
  auto* lemmas = s2->add_subcommand("lemmas", "random checks of the triangle lemmas");
  lemmas->add_option("--body", lm2.body);
  lemmas->add_option("--lambda", lm2.lambda);
  lemmas->add_option("--trials", lm2.trials);
  lemmas->add_option("--arc-trials", lm2.arc_trials);

  Soft3dArgs cu3, bo3, lo3, cs3, ce3;
  lo3.lambda = "0.1";
  auto* s3 = app.add_subcommand("soft3d", "3D lattice packings of balls");
  s3->require_subcommand(1);
  s3->fallthrough();
  auto* curve = s3->add_subcommand("curve", "FCC/BCC soft densities and the upper bound");
  curve->add_option("--lattice", cu3.lattice, "extra lattice column (JSON file or cubic)");
  curve->add_option("--lambda", cu3.lambda);
  auto* bound = s3->add_subcommand("bound", "upper bound on the soft density");
  bound->add_option("--lambda", bo3.lambda)->required();
  auto* localmax = s3->add_subcommand("localmax", "random deformations of FCC");
  localmax->add_option("--lambda", lo3.lambda);
  localmax->add_option("--trials", lo3.trials);
  localmax->add_option("--t", lo3.t_values, "deformation sizes")->delimiter(',');
  localmax->add_option("--fd-tolerance", lo3.fd_tolerance);
  auto* csikos = s3->add_subcommand("csikos-check", "wall formula vs finite differences");
  csikos->add_option("--clusters", cs3.clusters);
  auto* cell = s3->add_subcommand("cell", "Dirichlet-Voronoi cell of a lattice");
  cell->add_option("--lattice", ce3.lattice, "fcc, bcc, cubic or JSON file");
  cell->add_option("--off", ce3.off, "write the cell as OFF");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*density) soft2d_density(run, d2);
    else if (*sweep) soft2d_sweep(run, sw2, "sweep.csv");
    else if (*optimal) soft2d_sweep(run, op2, "optimal.csv");
    else if (*decompose) soft2d_decompose(run, dc2);
    else if (*lemmas) soft2d_lemmas(run, lm2);
    else if (*curve) soft3d_curve(run, cu3);
    else if (*bound) soft3d_bound(run, bo3);
    else if (*localmax) soft3d_localmax(run, lo3);
    else if (*csikos) soft3d_csikos(run, cs3);
    else if (*cell) soft3d_cell(run, ce3);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: InvalidInput: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
