#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoi/geometry/mesh.hpp"
#include "hoi/motion/sequence.hpp"

namespace hoi {

struct FootSlidingOptions {
  std::vector<std::string> foot_joints = {"L_Ankle", "R_Ankle", "L_Toe", "R_Toe"};
  double ground_height = 0.0;
  /// Feet at or above this height (meters over the ground) are airborne.
  double contact_height = 0.05;
  /// Index of the vertical axis (0 = x, 1 = y, 2 = z).
  int up_axis = 2;
};

/// Mean over consecutive frame pairs of
/// sum_{feet with h < H} |horizontal displacement| * (2 - 2^(h / H)),
/// with h the foot height at the later frame. Meters per frame; 0 for fewer
/// than two frames. Throws InputError when foot positions are missing.
double foot_sliding(const HOISequence& seq, const FootSlidingOptions& options = {});

/// Volume inside both watertight meshes, from voxel centers on a grid of the
/// given pitch over the intersection of their bounding boxes. In mesh units
/// cubed. Throws InputError on a non-watertight mesh or pitch <= 0.
double intersection_volume(const TriangleMesh& a, const TriangleMesh& b, double pitch = 0.005);

/// Voxel centers inside a watertight mesh on a grid anchored at `origin`,
/// as a dense nx * ny * nz occupancy array (x fastest).
std::vector<unsigned char> voxelize(const TriangleMesh& mesh, const Eigen::Vector3d& origin,
                                    double pitch, int nx, int ny, int nz);

struct ContactOptions {
  std::vector<std::string> hand_joints = {"L_Wrist", "R_Wrist"};
  double threshold = 0.05;
};

/// Whether any point lies closer than `threshold` to the mesh surface.
bool frame_in_contact(const std::vector<Eigen::Vector3d>& hand_points, const TriangleMesh& object,
                      double threshold);

/// 100 * (frames whose nearest hand joint is within the threshold of the posed
/// object) / frame count. Throws InputError on an empty sequence or missing
/// hand positions.
double contact_percentage(const HOISequence& seq, const TriangleMesh& object,
                          const ContactOptions& options = {});

}  // namespace hoi
