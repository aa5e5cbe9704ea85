#include "softpack/io.hpp"
#include "softpack/softvol3d.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace softpack;

namespace {

py::dict lemma_dict(const LemmaReport& r) {
  py::dict d;
  d["trials"] = r.trials;
  d["violations"] = r.violations;
  d["equality_cases"] = r.equality_cases;
  d["resampled"] = r.resampled;
  d["max_excess"] = r.max_excess;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Soft densities of soft-ball packings";

  // SoftpackError carries the error kind name in .kind
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> soft_error;
  soft_error.call_once_and_store_result(
      [&]() { return py::object(py::exception<Error>(m, "SoftpackError", PyExc_RuntimeError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& cls = soft_error.get_stored();
      py::object inst = cls(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(cls.ptr(), inst.ptr());
    }
  });

  py::class_<ConvexBody2D>(m, "ConvexBody2D")
      .def(py::init<std::vector<Vec2>, bool>(), py::arg("vertices"), py::arg("threefold") = false)
      .def_static("regular", &ConvexBody2D::regular, py::arg("n"), py::arg("circumradius") = 1.0,
                  py::arg("phase") = 0.0)
      .def_static("euclidean", &ConvexBody2D::euclidean, py::arg("n") = 96)
      .def_static("hexagon", &ConvexBody2D::hexagon)
      .def_static("square", &ConvexBody2D::square)
      .def_property_readonly("vertices", &ConvexBody2D::vertices)
      .def_property_readonly("threefold", &ConvexBody2D::threefold)
      .def_property_readonly("area", &ConvexBody2D::area)
      .def("norm", &ConvexBody2D::norm);

  m.def("load_body", &load_body, py::arg("spec"));

  py::class_<Lattice2D>(m, "Lattice2D")
      .def(py::init<>())
      .def(py::init([](const Vec2& u, const Vec2& v) { return Lattice2D{u, v}; }), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &Lattice2D::u)
      .def_readwrite("v", &Lattice2D::v)
      .def_property_readonly("determinant", &Lattice2D::determinant);

  m.def("min_gauge_vector", &min_gauge_vector, py::arg("lattice"), py::arg("body"));
  m.def("lattice_soft_density", &lattice_soft_density, py::arg("lattice"), py::arg("body"), py::arg("lam"),
        py::arg("tol") = kDefaultTol);
  m.def("reference_lattice", &reference_lattice, py::arg("body"), py::arg("theta"));
  m.def(
      "optimal_lattice_search",
      [](const ConvexBody2D& body, double lam, int samples) {
        OptimalLattice r;
        {
          py::gil_scoped_release release;
          r = optimal_lattice_search(body, lam, samples);
        }
        py::dict d;
        d["lattice"] = r.lattice;
        d["density"] = r.density;
        d["theta"] = r.theta;
        d["sample_densities"] = r.sample_densities;
        return d;
      },
      py::arg("body"), py::arg("lam"), py::arg("samples") = 720);
  m.def("lemma_legs_check", [](const ConvexBody2D& b, double lam, int trials, std::uint64_t seed) {
    return lemma_dict(lemma_legs_check(b, lam, trials, seed));
  }, py::arg("body"), py::arg("lam"), py::arg("trials"), py::arg("seed") = 1);
  m.def("lemma_base_check", [](const ConvexBody2D& b, double lam, int trials, std::uint64_t seed) {
    return lemma_dict(lemma_base_check(b, lam, trials, seed));
  }, py::arg("body"), py::arg("lam"), py::arg("trials"), py::arg("seed") = 1);

  // Random saturated configuration in [0, side]², tessellated; returns the
  // area bookkeeping and, when lam >= 0, the soft density of the eroded window.
  m.def(
      "decompose",
      [](const ConvexBody2D& body, double side, std::uint64_t seed, double lam, double max_edge) {
        const auto cfg = random_saturated_config(body, Rect{0.0, 0.0, side, side}, seed);
        DelaunayOptions opts;
        opts.max_edge = max_edge;
        const auto t = tessellate(cfg, opts);
        const Rect inner = cfg.window.eroded(kErosionMargin);
        const auto tr = tiling_report(t, inner);
        py::dict d;
        d["centers"] = cfg.centers;
        d["delaunay_cells"] = t.delaunay.cells.size();
        d["refined_cells"] = t.refined.size();
        d["window_area"] = tr.window_area;
        d["delaunay_area"] = tr.delaunay_area;
        d["molnar_area"] = tr.molnar_area;
        d["refined_area"] = tr.refined_area;
        d["bridges_disjoint"] = !check_bridges(t).has_value();
        if (lam >= 0.0) d["window_density"] = window_soft_density(t, lam, inner).density;
        return d;
      },
      py::arg("body"), py::arg("side") = 15.5, py::arg("seed") = 1, py::arg("lam") = -1.0,
      py::arg("max_edge") = 4.5);

  py::class_<Lattice3D>(m, "Lattice3D")
      .def(py::init(&Lattice3D::from_basis), py::arg("basis"))
      .def_static("fcc", &Lattice3D::fcc)
      .def_static("bcc", &Lattice3D::bcc)
      .def_static("cubic", &Lattice3D::cubic)
      .def_readonly("basis", &Lattice3D::basis)
      .def_property_readonly("determinant", &Lattice3D::determinant);

  m.def("minimal_vectors", &minimal_vectors, py::arg("lattice"), py::arg("rel_tol") = 1e-9);
  m.def("covering_radius", &covering_radius, py::arg("lattice"));
  m.def(
      "dv_cell",
      [](const Lattice3D& lat) {
        const auto cell = dv_cell(lat);
        py::dict d;
        d["vertices"] = cell.vertices;
        d["volume"] = cell.volume();
        std::vector<double> areas;
        for (std::size_t f = 0; f < cell.faces.size(); ++f) areas.push_back(cell.face_area(f));
        d["face_areas"] = areas;
        d["off"] = to_off(cell);
        return d;
      },
      py::arg("lattice"));
  m.def("soft_density_3d", &soft_density_3d, py::arg("lattice"), py::arg("lam"), py::arg("tol") = kDefaultTol);
  m.def("theorem2_bound", &theorem2_bound, py::arg("lam"));
  m.def(
      "union_volume",
      [](const std::vector<Vec3>& centers, const std::vector<double>& radii) {
        return union_volume(BallCluster{centers, radii});
      },
      py::arg("centers"), py::arg("radii"));
  m.def(
      "csikos_derivative",
      [](const std::vector<Vec3>& centers, const std::vector<double>& radii, const std::vector<Vec3>& velocities) {
        const BallCluster c{centers, radii};
        return csikos_derivative(csikos_walls(c), pair_speeds(c, velocities));
      },
      py::arg("centers"), py::arg("radii"), py::arg("velocities"));
  m.def(
      "local_max_experiment",
      [](double lam, int trials, const std::vector<double>& t_values, std::uint64_t seed) {
        LocalMaxReport r;
        {
          py::gil_scoped_release release;
          r = local_max_experiment(lam, trials, t_values, seed);
        }
        py::dict d;
        d["rho0"] = r.rho0;
        d["wall"] = r.wall;
        d["face"] = r.face;
        d["violations"] = r.violations;
        std::vector<double> analytic, fd;
        for (const auto& t : r.trials) {
          analytic.push_back(t.analytic);
          fd.push_back(t.fd);
        }
        d["analytic"] = analytic;
        d["fd"] = fd;
        return d;
      },
      py::arg("lam"), py::arg("trials"), py::arg("t_values") = std::vector<double>{1e-3, 1e-2},
      py::arg("seed") = 1);
}
