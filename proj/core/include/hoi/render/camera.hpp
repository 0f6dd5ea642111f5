#pragma once

#include <Eigen/Core>

namespace hoi {

/// Pinhole camera at the origin looking down +z, identity rotation.
/// Pixel (x, y) covers [x, x+1) x [y, y+1); its center is (x + 0.5, y + 0.5).
struct Camera {
  double focal = 175.0;
  Eigen::Vector2d principal = Eigen::Vector2d(64.0, 64.0);
  int width = 128;
  int height = 128;

  /// 512 x 512, focal 700, principal point at the image center.
  static Camera reference();
  /// 128 x 128 with focal rescaled from the reference camera.
  static Camera desk();

  /// Same field of view at another resolution.
  Camera resized(int new_width, int new_height) const;

  /// Throws InputError unless focal > 0 and the principal point lies in the image.
  void validate() const;

  template <class T>
  Eigen::Matrix<T, 2, 1> project_unchecked(const Eigen::Matrix<T, 3, 1>& p) const {
    return {T(focal) * p.x() / p.z() + T(principal.x()),
            T(focal) * p.y() / p.z() + T(principal.y())};
  }

  /// Throws BehindCameraError when p.z <= 0.
  Eigen::Vector2d project(const Eigen::Vector3d& p) const;

  /// Camera-frame point at the given depth (z) through a pixel position.
  Eigen::Vector3d back_project(const Eigen::Vector2d& pixel, double depth) const;

  bool contains(const Eigen::Vector2d& pixel) const {
    return pixel.x() >= 0.0 && pixel.y() >= 0.0 && pixel.x() < width && pixel.y() < height;
  }
};

}  // namespace hoi
