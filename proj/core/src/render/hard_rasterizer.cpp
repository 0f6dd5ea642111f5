#include "hoi/render/hard_rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hoi {

std::size_t GBuffer::covered() const {
  std::size_t n = 0;
  for (double v : silhouette.data()) n += v > 0.5;
  return n;
}

GBuffer rasterize_hard(const TriangleMesh& mesh, const Pose6DoF& pose, const Camera& camera) {
  camera.validate();
  const int W = camera.width;
  const int H = camera.height;
  GBuffer g{SilhouetteImage(W, H, 0.0),
            DepthImage(W, H, 0.0),
            Image<std::int32_t>(W, H, -1),
            Image<Eigen::Vector3d>(W, H, Eigen::Vector3d::Zero()),
            Image<Eigen::Vector3d>(W, H, Eigen::Vector3d::Zero()),
            pose,
            camera};
  std::vector<double> zbuf(static_cast<std::size_t>(W) * H,
                           std::numeric_limits<double>::infinity());

  const auto& ov = mesh.vertices();
  for (std::size_t fi = 0; fi < mesh.face_count(); ++fi) {
    const Face& f = mesh.faces()[fi];
    Eigen::Vector3d c[3];
    Eigen::Vector2d p[3];
    bool visible = true;
    for (int i = 0; i < 3; ++i) {
      c[i] = pose.apply(ov[f[i]]);
      if (c[i].z() < 1e-3) visible = false;
    }
    if (!visible) continue;
    for (int i = 0; i < 3; ++i) p[i] = camera.project_unchecked<double>(c[i]);
    const double area2 = (p[1] - p[0]).x() * (p[2] - p[0]).y() - (p[1] - p[0]).y() * (p[2] - p[0]).x();
    if (std::abs(area2) < 1e-12) continue;

    const double minx = std::min({p[0].x(), p[1].x(), p[2].x()});
    const double maxx = std::max({p[0].x(), p[1].x(), p[2].x()});
    const double miny = std::min({p[0].y(), p[1].y(), p[2].y()});
    const double maxy = std::max({p[0].y(), p[1].y(), p[2].y()});
    const int x0 = std::max(0, static_cast<int>(std::ceil(minx - 0.5)));
    const int x1 = std::min(W - 1, static_cast<int>(std::floor(maxx - 0.5)));
    const int y0 = std::max(0, static_cast<int>(std::ceil(miny - 0.5)));
    const int y1 = std::min(H - 1, static_cast<int>(std::floor(maxy - 0.5)));
    const Eigen::Vector3d normal =
        (ov[f[1]] - ov[f[0]]).cross(ov[f[2]] - ov[f[0]]).normalized();

    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Eigen::Vector2d q(x + 0.5, y + 0.5);
        auto edge = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
          const Eigen::Vector2d u = a - q, v = b - q;
          return u.x() * v.y() - u.y() * v.x();
        };
        // Barycentrics via signed sub-areas.
        const double l0 = edge(p[1], p[2]) / area2;
        const double l1 = edge(p[2], p[0]) / area2;
        const double l2 = 1.0 - l0 - l1;
        if (l0 < 0.0 || l1 < 0.0 || l2 < 0.0) continue;
        const double w0 = l0 / c[0].z(), w1 = l1 / c[1].z(), w2 = l2 / c[2].z();
        const double inv_z = w0 + w1 + w2;
        const double z = 1.0 / inv_z;
        const std::size_t idx = static_cast<std::size_t>(y) * W + x;
        if (z >= zbuf[idx]) continue;
        zbuf[idx] = z;
        g.silhouette[idx] = 1.0;
        g.depth[idx] = z;
        g.face[idx] = static_cast<std::int32_t>(fi);
        g.object_point[idx] = (w0 * ov[f[0]] + w1 * ov[f[1]] + w2 * ov[f[2]]) / inv_z;
        g.object_normal[idx] = normal;
      }
    }
  }
  return g;
}

}  // namespace hoi
