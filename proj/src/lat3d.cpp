#include "softpack/lat3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace softpack {

namespace {

struct LoopFace {
  std::vector<Vec3> pts;
  Face3D meta;
};

std::vector<LoopFace> to_loops(const Polyhedron3D& poly) {
  std::vector<LoopFace> out;
  out.reserve(poly.faces.size());
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    out.push_back({poly.face_points(f), poly.faces[f]});
  }
  return out;
}

// Welds coincident points and drops faces that collapse.
Polyhedron3D from_loops(const std::vector<LoopFace>& loops, double tol) {
  Polyhedron3D out;
  const auto index_of = [&](const Vec3& p) {
    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
      if ((out.vertices[i] - p).norm() <= tol) return static_cast<int>(i);
    }
    out.vertices.push_back(p);
    return static_cast<int>(out.vertices.size() - 1);
  };
  for (const auto& lf : loops) {
    Face3D face = lf.meta;
    face.loop.clear();
    for (const auto& p : lf.pts) {
      const int id = index_of(p);
      if (face.loop.empty() || face.loop.back() != id) face.loop.push_back(id);
    }
    while (face.loop.size() > 1 && face.loop.front() == face.loop.back()) face.loop.pop_back();
    if (face.loop.size() >= 3) out.faces.push_back(std::move(face));
  }
  // Faces that lost area become slivers; drop them and any orphaned vertices.
  std::vector<Face3D> kept;
  for (std::size_t f = 0; f < out.faces.size(); ++f) {
    if (out.face_area(f) > tol * tol) kept.push_back(out.faces[f]);
  }
  out.faces = std::move(kept);
  std::vector<int> remap(out.vertices.size(), -1);
  std::vector<Vec3> used;
  for (auto& face : out.faces) {
    for (int& id : face.loop) {
      if (remap[id] < 0) {
        remap[id] = static_cast<int>(used.size());
        used.push_back(out.vertices[id]);
      }
      id = remap[id];
    }
  }
  out.vertices = std::move(used);
  return out;
}

}  // namespace

Lattice3D Lattice3D::fcc() {
  Lattice3D l;
  const double s = std::sqrt(2.0);
  // columns (1,1,0), (0,1,1), (1,0,1) scaled by √2
  l.basis << s, 0.0, s,
             s, s, 0.0,
             0.0, s, s;
  return l;
}

Lattice3D Lattice3D::bcc() {
  Lattice3D l;
  const double h = 2.0 / std::sqrt(3.0);  // half the cubic cell side 4/√3
  l.basis << -h, h, h,
             h, -h, h,
             h, h, -h;
  return l;
}

Lattice3D Lattice3D::cubic() { return Lattice3D{2.0 * Mat3::Identity()}; }

Lattice3D Lattice3D::from_basis(const Mat3& basis) {
  if (!basis.allFinite()) throw Error(ErrorKind::InvalidInput, "lattice basis is not finite");
  const double scale = basis.col(0).norm() * basis.col(1).norm() * basis.col(2).norm();
  if (!(std::abs(basis.determinant()) > 1e-12 * scale)) {
    throw Error(ErrorKind::InvalidInput, "lattice basis is singular");
  }
  return Lattice3D{basis};
}

Mat3 lll_reduce(const Mat3& basis) {
  Mat3 b = basis;
  const auto gram_schmidt = [&](Mat3& bs, Mat3& mu) {
    mu.setZero();
    for (int i = 0; i < 3; ++i) {
      Vec3 v = b.col(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.col(i).dot(bs.col(j)) / bs.col(j).squaredNorm();
        v -= mu(i, j) * bs.col(j);
      }
      bs.col(i) = v;
    }
  };
  Mat3 bs;
  Mat3 mu;
  gram_schmidt(bs, mu);
  int k = 1;
  for (int guard = 0; k < 3 && guard < 10000; ++guard) {
    for (int j = k - 1; j >= 0; --j) {
      const double q = std::round(mu(k, j));
      if (q != 0.0) {
        b.col(k) -= q * b.col(j);
        gram_schmidt(bs, mu);
      }
    }
    if (bs.col(k).squaredNorm() >= (0.75 - mu(k, k - 1) * mu(k, k - 1)) * bs.col(k - 1).squaredNorm()) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      gram_schmidt(bs, mu);
      k = std::max(k - 1, 1);
    }
  }
  return b;
}

std::vector<Vec3> lattice_vectors_within(const Lattice3D& lattice, double radius) {
  const Mat3 b = lll_reduce(lattice.basis);
  const Mat3 inv = b.inverse();
  std::array<long, 3> bound{};
  for (int i = 0; i < 3; ++i) bound[i] = static_cast<long>(std::floor(radius * inv.row(i).norm() + 1e-9));
  std::vector<Vec3> out;
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (long i = -bound[0]; i <= bound[0]; ++i) {
    for (long j = -bound[1]; j <= bound[1]; ++j) {
      for (long k = -bound[2]; k <= bound[2]; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const Vec3 v = b * Vec3(static_cast<double>(i), static_cast<double>(j), static_cast<double>(k));
        if (v.squaredNorm() <= r2) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Vec3& p, const Vec3& q) {
    const double dp = p.squaredNorm();
    const double dq = q.squaredNorm();
    if (std::abs(dp - dq) > 1e-12 * std::max(dp, dq)) return dp < dq;
    return std::lexicographical_compare(p.data(), p.data() + 3, q.data(), q.data() + 3);
  });
  return out;
}

double min_vector_length(const Lattice3D& lattice) {
  const Mat3 b = lll_reduce(lattice.basis);
  double shortest = std::min({b.col(0).norm(), b.col(1).norm(), b.col(2).norm()});
  const auto vs = lattice_vectors_within(lattice, shortest);
  for (const auto& v : vs) shortest = std::min(shortest, v.norm());
  return shortest;
}

std::vector<Vec3> minimal_vectors(const Lattice3D& lattice, double rel_tol) {
  const double m = min_vector_length(lattice);
  return lattice_vectors_within(lattice, m * (1.0 + rel_tol));
}

double Polyhedron3D::volume() const {
  double v = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) v += faces[f].offset * face_area(f) / 3.0;
  return v;
}

std::vector<Vec3> Polyhedron3D::face_points(std::size_t face) const {
  std::vector<Vec3> out;
  for (int id : faces[face].loop) out.push_back(vertices[id]);
  return out;
}

double Polyhedron3D::face_area(std::size_t face) const {
  const auto& loop = faces[face].loop;
  Vec3 twice = Vec3::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    twice += vertices[loop[i]].cross(vertices[loop[(i + 1) % loop.size()]]);
  }
  return 0.5 * twice.dot(faces[face].normal);
}

std::size_t Polyhedron3D::edge_count() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces) {
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      const int a = f.loop[i];
      const int b = f.loop[(i + 1) % f.loop.size()];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return edges.size();
}

int Polyhedron3D::euler_characteristic() const {
  return static_cast<int>(vertices.size()) - static_cast<int>(edge_count()) +
         static_cast<int>(faces.size());
}

double Polyhedron3D::max_vertex_norm(const Vec3& from) const {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, (v - from).norm());
  return r;
}

bool Polyhedron3D::contains(const Vec3& p, double tol) const {
  for (const auto& f : faces) {
    if (f.normal.dot(p) > f.offset + tol) return false;
  }
  return !faces.empty();
}

Polyhedron3D make_box(const Vec3& center, double half) {
  Polyhedron3D box;
  for (int i = 0; i < 8; ++i) {
    box.vertices.push_back(center + half * Vec3((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0,
                                                (i & 4) ? 1.0 : -1.0));
  }
  // Vertex bit k set means +half along axis k.
  const std::array<std::array<int, 4>, 6> loops{{
      {0, 4, 6, 2},  // -x
      {1, 3, 7, 5},  // +x
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 2, 3, 1},  // -z
      {4, 5, 7, 6},  // +z
  }};
  for (int f = 0; f < 6; ++f) {
    Face3D face;
    face.loop.assign(loops[f].begin(), loops[f].end());
    face.normal = Vec3::Zero();
    face.normal[f / 2] = (f % 2) ? 1.0 : -1.0;
    face.offset = face.normal.dot(center) + half;
    box.faces.push_back(std::move(face));
  }
  return box;
}

Polyhedron3D clip(const Polyhedron3D& poly, const Vec3& normal, double offset, int tag,
                  const Vec3& generator, double tol) {
  const double len = normal.norm();
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidInput, "clip plane normal is zero");
  const Vec3 n = normal / len;
  const double h = offset / len;
  bool any_out = false;
  bool any_in = false;
  for (const auto& v : poly.vertices) {
    const double s = n.dot(v) - h;
    any_out = any_out || s > tol;
    any_in = any_in || s < -tol;
  }
  if (!any_out) return poly;
  if (!any_in) return {};

  std::vector<LoopFace> loops;
  std::vector<Vec3> cap;
  for (auto lf : to_loops(poly)) {
    std::vector<Vec3> kept;
    const std::size_t m = lf.pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3& p = lf.pts[i];
      const Vec3& q = lf.pts[(i + 1) % m];
      const double sp = n.dot(p) - h;
      const double sq = n.dot(q) - h;
      const bool pin = sp <= tol;
      const bool qin = sq <= tol;
      if (pin) {
        kept.push_back(p);
        if (std::abs(sp) <= tol) cap.push_back(p);
      }
      if ((sp < -tol && sq > tol) || (sp > tol && sq < -tol)) {
        const Vec3 x = p + (sp / (sp - sq)) * (q - p);
        kept.push_back(x);
        cap.push_back(x);
      } else if (pin != qin) {
        // One end within tolerance of the plane: it is already kept/capped.
      }
    }
    if (kept.size() >= 3) {
      lf.pts = std::move(kept);
      loops.push_back(std::move(lf));
    }
  }
  // Unique cap points, ordered counterclockwise about n.
  std::vector<Vec3> uniq;
  for (const auto& p : cap) {
    if (std::none_of(uniq.begin(), uniq.end(), [&](const Vec3& q) { return (p - q).norm() <= tol; })) {
      uniq.push_back(p);
    }
  }
  if (uniq.size() >= 3) {
    Vec3 mid = Vec3::Zero();
    for (const auto& p : uniq) mid += p;
    mid /= static_cast<double>(uniq.size());
    const Vec3 e1 = (std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(n).normalized();
    const Vec3 e2 = n.cross(e1);
    std::sort(uniq.begin(), uniq.end(), [&](const Vec3& p, const Vec3& q) {
      return std::atan2((p - mid).dot(e2), (p - mid).dot(e1)) <
             std::atan2((q - mid).dot(e2), (q - mid).dot(e1));
    });
    LoopFace capface;
    capface.pts = std::move(uniq);
    capface.meta.normal = n;
    capface.meta.offset = h;
    capface.meta.tag = tag;
    capface.meta.generator = generator;
    loops.push_back(std::move(capface));
  }
  return from_loops(loops, tol);
}

Polyhedron3D dv_cell(const Lattice3D& lattice, double tol) {
  const Mat3 b = lll_reduce(lattice.basis);
  const double reach = std::sqrt(b.col(0).squaredNorm() + b.col(1).squaredNorm() + b.col(2).squaredNorm());
  const auto vectors = lattice_vectors_within(lattice, reach);
  const double scale = std::max(1.0, reach);
  const double eps = tol * scale;
  Polyhedron3D cell = make_box(Vec3::Zero(), reach);
  double radius = cell.max_vertex_norm();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Vec3& v = vectors[i];
    if (0.5 * v.norm() >= radius + eps) break;  // sorted by length: nothing else cuts
    cell = clip(cell, v, 0.5 * v.squaredNorm(), static_cast<int>(i), v, eps);
    if (cell.faces.empty()) throw Error(ErrorKind::NumericalDegeneracy, "DV cell vanished");
    radius = cell.max_vertex_norm();
  }
  for (const auto& f : cell.faces) {
    if (f.tag < 0) throw Error(ErrorKind::NumericalDegeneracy, "DV cell still touches the bounding box");
  }
  if (cell.euler_characteristic() != 2) {
    throw Error(ErrorKind::NumericalDegeneracy,
                "DV cell has Euler characteristic " + std::to_string(cell.euler_characteristic()));
  }
  const double det = std::abs(lattice.determinant());
  if (std::abs(cell.volume() - det) > 1e-8 * det) {
    std::ostringstream os;
    os.precision(15);
    os << "DV cell volume " << cell.volume() << " differs from |det| " << det;
    throw Error(ErrorKind::NumericalDegeneracy, os.str());
  }
  return cell;
}

double covering_radius(const Lattice3D& lattice) { return dv_cell(lattice).max_vertex_norm(); }

double theorem2_bound(double lambda) {
  const double top = kSqrt53 - 1.0;
  if (!(lambda > 0.0 && lambda < top)) {
    std::ostringstream os;
    os.precision(12);
    os << "lambda = " << lambda << " outside (0, sqrt(5/3) - 1)";
    throw Error(ErrorKind::LambdaOutOfRange, os.str());
  }
  const double q = (top - lambda) / (11.0 * kSqrt53 + 3.0 - lambda);
  return 1.0 - q * q * q;
}

std::string to_off(const Polyhedron3D& poly) {
  std::ostringstream os;
  os.precision(17);
  os << "OFF\n" << poly.vertices.size() << ' ' << poly.faces.size() << ' ' << poly.edge_count() << '\n';
  for (const auto& v : poly.vertices) os << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : poly.faces) {
    os << f.loop.size();
    for (int id : f.loop) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

}  // namespace softpack
