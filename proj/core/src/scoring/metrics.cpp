#include "hoi/scoring/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoi/error.hpp"
#include "hoi/geometry/distance.hpp"

namespace hoi {

namespace {

std::vector<std::size_t> joint_indices(const HOISequence& seq,
                                       const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& name : names) {
    const int j = seq.joint_index(name);
    if (j < 0) throw InputError("joint '" + name + "' is not in the skeleton");
    out.push_back(static_cast<std::size_t>(j));
  }
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    if (seq.frames[i].joint_positions.size() != seq.skeleton.size()) {
      throw InputError("frame " + std::to_string(i) + " has no joint positions");
    }
  }
  return out;
}

}  // namespace

double foot_sliding(const HOISequence& seq, const FootSlidingOptions& options) {
  if (options.up_axis < 0 || options.up_axis > 2) throw InputError("up_axis must be 0, 1 or 2");
  if (!(options.contact_height > 0.0)) throw InputError("contact height must be positive");
  const auto feet = joint_indices(seq, options.foot_joints);
  if (seq.frames.size() < 2) return 0.0;
  const int up = options.up_axis;
  double total = 0.0;
  for (std::size_t t = 1; t < seq.frames.size(); ++t) {
    for (std::size_t j : feet) {
      const Eigen::Vector3d& p = seq.frames[t].joint_positions[j];
      const double h = p[up] - options.ground_height;
      if (!(h < options.contact_height)) continue;
      Eigen::Vector3d d = p - seq.frames[t - 1].joint_positions[j];
      d[up] = 0.0;
      total += d.norm() * (2.0 - std::exp2(h / options.contact_height));
    }
  }
  return total / static_cast<double>(seq.frames.size() - 1);
}

std::vector<unsigned char> voxelize(const TriangleMesh& mesh, const Eigen::Vector3d& origin,
                                    double pitch, int nx, int ny, int nz) {
  const std::size_t columns = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<std::vector<double>> crossings(columns);
  const auto& V = mesh.vertices();
  for (const Face& f : mesh.faces()) {
    Eigen::Vector3d a = V[f[0]], b = V[f[1]], c = V[f[2]];
    double area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    if (area == 0.0) continue;  // parallel to the column direction
    if (area < 0.0) {
      std::swap(b, c);
      area = -area;
    }
    const Eigen::Vector3d* p[3] = {&a, &b, &c};
    // Top-left ownership so a column through a shared edge hits exactly one face.
    bool owns[3];
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector3d& s = *p[e];
      const Eigen::Vector3d& t = *p[(e + 1) % 3];
      const double dy = t.y() - s.y(), dx = t.x() - s.x();
      owns[e] = dy < 0.0 || (dy == 0.0 && dx > 0.0);
    }
    const double minx = std::min({a.x(), b.x(), c.x()}), maxx = std::max({a.x(), b.x(), c.x()});
    const double miny = std::min({a.y(), b.y(), c.y()}), maxy = std::max({a.y(), b.y(), c.y()});
    const int i0 = std::max(0, static_cast<int>(std::ceil((minx - origin.x()) / pitch - 0.5)));
    const int i1 = std::min(nx - 1, static_cast<int>(std::floor((maxx - origin.x()) / pitch - 0.5)));
    const int j0 = std::max(0, static_cast<int>(std::ceil((miny - origin.y()) / pitch - 0.5)));
    const int j1 = std::min(ny - 1, static_cast<int>(std::floor((maxy - origin.y()) / pitch - 0.5)));
    for (int j = j0; j <= j1; ++j) {
      const double y = origin.y() + (j + 0.5) * pitch;
      for (int i = i0; i <= i1; ++i) {
        const double x = origin.x() + (i + 0.5) * pitch;
        double w[3];
        bool inside = true;
        for (int e = 0; e < 3 && inside; ++e) {
          const Eigen::Vector3d& s = *p[e];
          const Eigen::Vector3d& t = *p[(e + 1) % 3];
          w[(e + 2) % 3] = (t.x() - s.x()) * (y - s.y()) - (t.y() - s.y()) * (x - s.x());
          const double we = w[(e + 2) % 3];
          inside = we > 0.0 || (we == 0.0 && owns[e]);
        }
        if (!inside) continue;
        const double z = (w[0] * a.z() + w[1] * b.z() + w[2] * c.z()) / (w[0] + w[1] + w[2]);
        crossings[static_cast<std::size_t>(j) * nx + i].push_back(z);
      }
    }
  }

  std::vector<unsigned char> occ(columns * static_cast<std::size_t>(nz), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      auto& zs = crossings[static_cast<std::size_t>(j) * nx + i];
      if (zs.size() < 2) continue;
      std::sort(zs.begin(), zs.end());
      for (std::size_t s = 0; s + 1 < zs.size(); s += 2) {
        const int k0 = std::max(0, static_cast<int>(std::ceil((zs[s] - origin.z()) / pitch - 0.5)));
        const int k1 =
            std::min(nz - 1, static_cast<int>(std::ceil((zs[s + 1] - origin.z()) / pitch - 0.5)) - 1);
        for (int k = k0; k <= k1; ++k) {
          occ[(static_cast<std::size_t>(k) * ny + j) * nx + i] = 1;
        }
      }
    }
  }
  return occ;
}

double intersection_volume(const TriangleMesh& a, const TriangleMesh& b, double pitch) {
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw InputError("voxel pitch must be positive");
  if (!a.is_watertight() || !b.is_watertight()) {
    throw InputError("intersection volume needs watertight meshes");
  }
  if (a.empty() || b.empty()) return 0.0;
  const Eigen::AlignedBox3d box = a.bounds().intersection(b.bounds());
  if (box.isEmpty()) return 0.0;
  const Eigen::Vector3d ext = box.sizes();
  int n[3];
  for (int d = 0; d < 3; ++d) {
    const double cells = std::ceil(ext[d] / pitch - 1e-9);
    if (cells > 4096.0) throw InputError("voxel grid too fine for the overlap region");
    n[d] = std::max(1, static_cast<int>(cells));
  }
  const auto va = voxelize(a, box.min(), pitch, n[0], n[1], n[2]);
  const auto vb = voxelize(b, box.min(), pitch, n[0], n[1], n[2]);
  std::size_t both = 0;
  for (std::size_t i = 0; i < va.size(); ++i) both += (va[i] & vb[i]);
  return static_cast<double>(both) * pitch * pitch * pitch;
}

bool frame_in_contact(const std::vector<Eigen::Vector3d>& hand_points, const TriangleMesh& object,
                      double threshold) {
  for (const auto& p : hand_points) {
    if (point_mesh_distance(p, object) < threshold) return true;
  }
  return false;
}

double contact_percentage(const HOISequence& seq, const TriangleMesh& object,
                          const ContactOptions& options) {
  if (seq.frames.empty()) throw InputError("contact percentage of an empty sequence");
  if (!(options.threshold > 0.0)) throw InputError("contact threshold must be positive");
  const auto hands = joint_indices(seq, options.hand_joints);
  std::size_t hits = 0;
  for (const auto& f : seq.frames) {
    const TriangleMesh posed = object.transformed(f.object.pose);
    std::vector<Eigen::Vector3d> points;
    for (std::size_t j : hands) points.push_back(f.joint_positions[j]);
    if (frame_in_contact(points, posed, options.threshold)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(seq.frames.size());
}

}  // namespace hoi
