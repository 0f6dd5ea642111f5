#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/image.hpp"

namespace hoi {

/// Z-buffered render of one mesh sampled at pixel centers.
struct GBuffer {
  SilhouetteImage silhouette;  ///< 0 or 1
  DepthImage depth;            ///< camera-frame z, 0 where empty
  Image<std::int32_t> face;    ///< -1 where empty
  Image<Eigen::Vector3d> object_point;   ///< surface point in the mesh's own frame
  Image<Eigen::Vector3d> object_normal;  ///< unit face normal in the mesh's own frame
  Pose6DoF pose;
  Camera camera;

  /// Pixel-center positions with a surface hit.
  std::size_t covered() const;
};

GBuffer rasterize_hard(const TriangleMesh& mesh, const Pose6DoF& pose, const Camera& camera);

}  // namespace hoi
