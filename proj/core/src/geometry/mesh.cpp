#include "hoi/geometry/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hoi/error.hpp"

namespace hoi {
namespace {

bool is_degenerate(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a;
  const Eigen::Vector3d ac = c - a;
  const double scale = std::max(ab.squaredNorm(), ac.squaredNorm());
  return scale == 0.0 || ab.cross(ac).norm() <= 1e-12 * scale;
}

bool check_watertight(const std::vector<Face>& faces) {
  if (faces.empty()) return false;
  // directed edge -> count; closed, consistently oriented surfaces use each
  // directed edge once and its reverse once.
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(faces.size() * 3);
  auto key = [](std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  for (const Face& f : faces) {
    for (int e = 0; e < 3; ++e) {
      if (++directed[key(f[e], f[(e + 1) % 3])] > 1) return false;
    }
  }
  for (const auto& [k, count] : directed) {
    const auto a = static_cast<std::uint32_t>(k >> 32);
    const auto b = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (!directed.contains(key(b, a))) return false;
  }
  return true;
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Eigen::Vector3d> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].allFinite()) {
      throw InputError("mesh vertex " + std::to_string(i) + " is not finite");
    }
  }
  faces_.reserve(faces.size());
  for (const Face& f : faces) {
    for (std::uint32_t idx : f) {
      if (idx >= vertices_.size()) {
        throw InputError("face index " + std::to_string(idx) + " out of range (" +
                         std::to_string(vertices_.size()) + " vertices)");
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2] ||
        is_degenerate(vertices_[f[0]], vertices_[f[1]], vertices_[f[2]])) {
      ++dropped_degenerate_;
      continue;
    }
    faces_.push_back(f);
  }

  normals_.assign(vertices_.size(), Eigen::Vector3d::Zero());
  for (const Face& f : faces_) {
    const Eigen::Vector3d n =
        (vertices_[f[1]] - vertices_[f[0]]).cross(vertices_[f[2]] - vertices_[f[0]]);
    for (std::uint32_t idx : f) normals_[idx] += n;
  }
  for (auto& n : normals_) {
    const double len = n.norm();
    if (len > 0.0) n /= len;
  }
  watertight_ = check_watertight(faces_);
}

Eigen::AlignedBox3d TriangleMesh::bounds() const {
  Eigen::AlignedBox3d box;
  for (const auto& v : vertices_) box.extend(v);
  return box;
}

double TriangleMesh::bounding_diagonal() const {
  if (vertices_.empty()) return 0.0;
  return bounds().diagonal().norm();
}

Eigen::Vector3d TriangleMesh::vertex_centroid() const {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  if (vertices_.empty()) return c;
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Eigen::Vector3d TriangleMesh::face_normal(std::size_t face) const {
  const Face& f = faces_.at(face);
  return (vertices_[f[1]] - vertices_[f[0]])
      .cross(vertices_[f[2]] - vertices_[f[0]])
      .normalized();
}

TriangleMesh TriangleMesh::transformed(const Pose6DoF& pose) const {
  std::vector<Eigen::Vector3d> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(pose.apply(v));
  return TriangleMesh(std::move(out), faces_);
}

VertexSelection::VertexSelection(std::vector<std::uint32_t> indices, const TriangleMesh& mesh)
    : indices_(std::move(indices)) {
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t idx : indices_) {
    if (idx >= mesh.vertex_count()) {
      throw InputError("vertex selection index " + std::to_string(idx) + " out of range");
    }
    if (!seen.insert(idx).second) {
      throw InputError("vertex selection index " + std::to_string(idx) + " repeated");
    }
  }
}

TriangleMesh make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extents,
                      int subdivisions) {
  if (subdivisions < 1) throw InputError("box subdivisions must be >= 1");
  if ((half_extents.array() <= 0.0).any()) throw InputError("box half extents must be positive");
  const int n = subdivisions;
  std::vector<Eigen::Vector3d> vertices;
  std::map<std::array<int, 3>, std::uint32_t> lattice;
  auto vertex = [&](const std::array<int, 3>& ijk) {
    auto [it, inserted] = lattice.try_emplace(ijk, static_cast<std::uint32_t>(vertices.size()));
    if (inserted) {
      Eigen::Vector3d p;
      for (int a = 0; a < 3; ++a) {
        p[a] = center[a] + half_extents[a] * (2.0 * ijk[a] / n - 1.0);
      }
      vertices.push_back(p);
    }
    return it->second;
  };

  std::vector<Face> faces;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          auto corner = [&](int di, int dj) {
            std::array<int, 3> ijk{};
            ijk[axis] = side * n;
            ijk[u] = i + di;
            ijk[v] = j + dj;
            return vertex(ijk);
          };
          const std::uint32_t c00 = corner(0, 0), c10 = corner(1, 0), c11 = corner(1, 1),
                              c01 = corner(0, 1);
          if (side == 1) {
            faces.push_back({c00, c10, c11});
            faces.push_back({c00, c11, c01});
          } else {
            faces.push_back({c00, c11, c10});
            faces.push_back({c00, c01, c11});
          }
        }
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

TriangleMesh make_icosphere(const Eigen::Vector3d& center, double radius, int refinements) {
  if (!(radius > 0.0)) throw InputError("icosphere radius must be positive");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> unit = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : unit) p.normalize();
  std::vector<Face> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int r = 0; r < refinements; ++r) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto [it, inserted] = midpoint.try_emplace({key.first, key.second},
                                                 static_cast<std::uint32_t>(unit.size()));
      if (inserted) unit.push_back((unit[a] + unit[b]).normalized());
      return it->second;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const std::uint32_t ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  for (auto& p : unit) p = center + radius * p;
  return TriangleMesh(std::move(unit), std::move(faces));
}

TriangleMesh merge_meshes(std::span<const TriangleMesh> meshes) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  for (const auto& m : meshes) {
    const auto base = static_cast<std::uint32_t>(vertices.size());
    vertices.insert(vertices.end(), m.vertices().begin(), m.vertices().end());
    for (const Face& f : m.faces()) faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

}  // namespace hoi
