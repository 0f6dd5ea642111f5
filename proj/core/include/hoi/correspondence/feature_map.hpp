#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoi/render/image.hpp"

namespace hoi {

/// Dense H x W x C descriptor grid with a per-pixel validity mask.
/// Storage is row-major, channels innermost: ((y * W) + x) * C + c.
class FeatureMap {
public:
  FeatureMap() = default;
  FeatureMap(int width, int height, int channels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }

  std::span<float> descriptor(int x, int y) {
    return {data_.data() + offset(x, y), static_cast<std::size_t>(channels_)};
  }
  std::span<const float> descriptor(int x, int y) const {
    return {data_.data() + offset(x, y), static_cast<std::size_t>(channels_)};
  }

  bool valid(int x, int y) const { return valid_(x, y) != 0; }
  void set_valid(int x, int y, bool v) { valid_(x, y) = v ? 1 : 0; }
  const Mask& valid_mask() const { return valid_; }
  void set_valid_mask(const Mask& mask);

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  std::size_t valid_count() const { return count_nonzero(valid_); }

  /// Throws InputError if any valid pixel carries a non-finite value.
  void validate() const;

private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channels_);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
  Mask valid_;
};

}  // namespace hoi
