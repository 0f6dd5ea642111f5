#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "hoi/geometry/pose.hpp"

namespace hoi {

using Face = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh in meters. Immutable once built.
///
/// Construction validates indices and drops zero-area triangles; the number
/// dropped is available from dropped_degenerate().
class TriangleMesh {
public:
  TriangleMesh() = default;
  TriangleMesh(std::vector<Eigen::Vector3d> vertices, std::vector<Face> faces);

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  /// Area-weighted vertex normals.
  const std::vector<Eigen::Vector3d>& normals() const { return normals_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  bool empty() const { return faces_.empty(); }
  std::size_t dropped_degenerate() const { return dropped_degenerate_; }

  /// Every edge is shared by exactly two faces with opposite orientation.
  bool is_watertight() const { return watertight_; }

  Eigen::AlignedBox3d bounds() const;
  double bounding_diagonal() const;
  Eigen::Vector3d vertex_centroid() const;
  Eigen::Vector3d face_normal(std::size_t face) const;

  TriangleMesh transformed(const Pose6DoF& pose) const;

private:
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<Face> faces_;
  std::vector<Eigen::Vector3d> normals_;
  std::size_t dropped_degenerate_ = 0;
  bool watertight_ = false;
};

/// Indices into a specific mesh; unique and in range.
class VertexSelection {
public:
  VertexSelection() = default;
  VertexSelection(std::vector<std::uint32_t> indices, const TriangleMesh& mesh);

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

private:
  std::vector<std::uint32_t> indices_;
};

/// Closed axis-aligned box, each face split into n x n quads. Outward winding.
TriangleMesh make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extents,
                      int subdivisions = 1);

/// Closed icosphere, outward winding.
TriangleMesh make_icosphere(const Eigen::Vector3d& center, double radius, int refinements = 2);

/// Concatenates meshes (no welding).
TriangleMesh merge_meshes(std::span<const TriangleMesh> meshes);

}  // namespace hoi
