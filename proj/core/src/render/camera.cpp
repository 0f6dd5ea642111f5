#include "hoi/render/camera.hpp"

#include <string>

#include "hoi/error.hpp"

namespace hoi {

Camera Camera::reference() {
  return Camera{700.0, Eigen::Vector2d(256.0, 256.0), 512, 512};
}

Camera Camera::desk() { return reference().resized(128, 128); }

Camera Camera::resized(int new_width, int new_height) const {
  const double sx = static_cast<double>(new_width) / width;
  const double sy = static_cast<double>(new_height) / height;
  Camera c = *this;
  c.width = new_width;
  c.height = new_height;
  c.focal = focal * sx;
  c.principal = Eigen::Vector2d(principal.x() * sx, principal.y() * sy);
  return c;
}

void Camera::validate() const {
  if (!(focal > 0.0)) throw InputError("camera focal length must be positive");
  if (width <= 0 || height <= 0) throw InputError("camera image size must be positive");
  if (!(principal.x() >= 0.0 && principal.x() <= width && principal.y() >= 0.0 &&
        principal.y() <= height)) {
    throw InputError("camera principal point must lie inside the image");
  }
}

Eigen::Vector2d Camera::project(const Eigen::Vector3d& p) const {
  if (!(p.z() > 0.0)) {
    throw BehindCameraError("cannot project point with z = " + std::to_string(p.z()));
  }
  return project_unchecked<double>(p);
}

Eigen::Vector3d Camera::back_project(const Eigen::Vector2d& pixel, double depth) const {
  return {(pixel.x() - principal.x()) * depth / focal, (pixel.y() - principal.y()) * depth / focal,
          depth};
}

}  // namespace hoi
