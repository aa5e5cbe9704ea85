#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles/oracles.hpp"
#include "softpack/lat3d.hpp"

#include <random>
#include <set>

using namespace softpack;

namespace {

// Brute-force enumeration over a generous coefficient box.
std::vector<Vec3> brute_minimal(const Mat3& basis, int box) {
  double best = 1e300;
  std::vector<Vec3> out;
  for (int i = -box; i <= box; ++i)
    for (int j = -box; j <= box; ++j)
      for (int k = -box; k <= box; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const Vec3 v = basis * Vec3(i, j, k);
        const double n = v.norm();
        if (n < best * (1 - 1e-9)) {
          best = n;
          out.clear();
        }
        if (n <= best * (1 + 1e-9)) out.push_back(v);
      }
  return out;
}

}  // namespace

TEST_CASE("minimal vectors of the presets") {
  const auto fcc = Lattice3D::fcc();
  const auto mv = minimal_vectors(fcc);
  CHECK(mv.size() == 12);
  for (const auto& v : mv) CHECK(v.norm() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(minimal_vectors(Lattice3D::cubic()).size() == 6);
  const auto bcc = minimal_vectors(Lattice3D::bcc());
  CHECK(bcc.size() == 8);
  CHECK(min_vector_length(Lattice3D::bcc()) == doctest::Approx(2.0).epsilon(1e-12));
  // the FCC set is the oracle's √2·(±1, ±1, 0) family
  std::set<std::array<long, 3>> got, want;
  for (const auto& v : mv) got.insert({std::lround(v.x() * 1e6), std::lround(v.y() * 1e6), std::lround(v.z() * 1e6)});
  for (const auto& v : oracle::fcc_minimal_vectors())
    want.insert({std::lround(v.x() * 1e6), std::lround(v.y() * 1e6), std::lround(v.z() * 1e6)});
  CHECK(got == want);
}

TEST_CASE("minimal vectors agree with brute force on skewed bases") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Mat3 b = Mat3::Identity() * 2.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b(i, j) += 0.6 * u(rng);
    // unimodular shear keeps the lattice, spoils the basis
    Mat3 m = Mat3::Identity();
    m(0, 1) = k(rng);
    m(1, 2) = k(rng);
    m(0, 2) = k(rng);
    const Lattice3D lat = Lattice3D::from_basis(b * m);
    const auto fast = minimal_vectors(lat);
    const auto slow = brute_minimal(b, 4);
    CHECK(fast.size() == slow.size());
    CHECK(min_vector_length(lat) == doctest::Approx(slow.front().norm()).epsilon(1e-12));
    CHECK(std::abs(std::abs(lll_reduce(b * m).determinant()) - std::abs(b.determinant())) < 1e-9);
  }
}

TEST_CASE("singular basis is rejected") {
  Mat3 b = Mat3::Identity();
  b.col(2) = b.col(0) + b.col(1);
  try {
    Lattice3D::from_basis(b);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("FCC cell is the rhombic dodecahedron") {
  const auto cell = dv_cell(Lattice3D::fcc());
  CHECK(cell.faces.size() == 12);
  CHECK(cell.vertices.size() == 14);
  CHECK(cell.euler_characteristic() == 2);
  CHECK(cell.volume() == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-9));
  double total = 0.0;
  for (std::size_t f = 0; f < cell.faces.size(); ++f) {
    CHECK(cell.face_area(f) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(cell.faces[f].offset == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cell.faces[f].generator.norm() == doctest::Approx(2.0).epsilon(1e-12));
    total += (cell.faces[f].generator.norm() / 2.0) * cell.face_area(f);
  }
  // pyramid decomposition over the faces, equal to 4F
  CHECK(total / 3.0 == doctest::Approx(cell.volume()).epsilon(1e-9));
  CHECK(cell.volume() == doctest::Approx(4.0 * cell.face_area(0)).epsilon(1e-9));
}

TEST_CASE("cube and truncated octahedron") {
  const auto cube = dv_cell(Lattice3D::cubic());
  CHECK(cube.faces.size() == 6);
  CHECK(cube.volume() == doctest::Approx(8.0).epsilon(1e-12));
  const auto bcc = dv_cell(Lattice3D::bcc());
  CHECK(bcc.faces.size() == 14);
  CHECK(bcc.vertices.size() == 24);
  CHECK(bcc.euler_characteristic() == 2);
  CHECK(bcc.volume() == doctest::Approx(32.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("cell volume equals the determinant for random lattices") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat3 b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b(i, j) = u(rng) + (i == j ? 1.5 : 0.0);
    const Lattice3D lat = Lattice3D::from_basis(b);
    const auto cell = dv_cell(lat);
    CHECK(cell.volume() == doctest::Approx(std::abs(b.determinant())).epsilon(1e-9));
    CHECK(cell.euler_characteristic() == 2);
    CHECK(cell.contains(Vec3::Zero()));
    // cell points are no closer to any short lattice vector than to the origin
    for (const auto& v : cell.vertices) {
      for (const auto& w : lattice_vectors_within(lat, 2.0 * cell.max_vertex_norm() + 1e-9)) {
        CHECK((v - w).norm() >= v.norm() - 1e-9);
      }
    }
  }
}

TEST_CASE("covering radii") {
  CHECK(std::abs(covering_radius(Lattice3D::bcc()) - std::sqrt(5.0 / 3.0)) < 1e-9);
  CHECK(std::abs(covering_radius(Lattice3D::fcc()) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(covering_radius(Lattice3D::cubic()) - std::sqrt(3.0)) < 1e-9);
}

TEST_CASE("density upper bound") {
  const double top = std::sqrt(5.0 / 3.0) - 1.0;
  CHECK(std::abs(theorem2_bound(0.25) - static_cast<double>(oracle::theorem2_bound(0.25L))) < 1e-15);
  CHECK(std::abs(theorem2_bound(0.25) - 0.999999986) < 1e-9);
  CHECK(std::abs(theorem2_bound(1e-12) - 0.99999516) < 1e-8);
  CHECK(theorem2_bound(top - 1e-9) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(theorem2_bound(top - 1e-3) < 1.0);
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double lam = top * i / 1000.0;
    const double b = theorem2_bound(lam);
    CHECK(b > prev);
    CHECK(b < 1.0);
    prev = b;
  }
  for (double bad : {0.0, -0.1, top, 0.5}) {
    try {
      theorem2_bound(bad);
      FAIL("expected LambdaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::LambdaOutOfRange);
    }
  }
}

TEST_CASE("OFF export") {
  const auto cube = dv_cell(Lattice3D::cubic());
  const std::string off = to_off(cube);
  CHECK(off.rfind("OFF\n8 6 12\n", 0) == 0);
}
