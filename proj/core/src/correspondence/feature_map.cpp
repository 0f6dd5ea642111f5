#include "hoi/correspondence/feature_map.hpp"

#include <cmath>
#include <string>

#include "hoi/error.hpp"

namespace hoi {

FeatureMap::FeatureMap(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels), valid_(width, height, 1) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    throw InputError("feature map dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, 0.0f);
}

void FeatureMap::set_valid_mask(const Mask& mask) {
  if (mask.width() != width_ || mask.height() != height_) {
    throw InputError("validity mask size does not match feature map");
  }
  valid_ = mask;
}

void FeatureMap::validate() const {
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!valid(x, y)) continue;
      for (float v : descriptor(x, y)) {
        if (!std::isfinite(v)) {
          throw InputError("non-finite descriptor at valid pixel (" + std::to_string(x) + ", " +
                           std::to_string(y) + ")");
        }
      }
    }
  }
}

}  // namespace hoi
