#pragma once

#include <cstdint>
#include <vector>

#include "hoi/error.hpp"

namespace hoi {

/// Row-major H x W grid.
template <class T>
class Image {
public:
  Image() = default;
  Image(int width, int height, const T& fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(checked(width)) * static_cast<std::size_t>(checked(height)),
              fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <class U>
  bool same_shape(const Image<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

private:
  static int checked(int n) {
    if (n < 0) throw InputError("image dimensions must be non-negative");
    return n;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Silhouette values in [0, 1].
using SilhouetteImage = Image<double>;
/// Depth in meters; 0 marks empty pixels.
using DepthImage = Image<double>;
using Mask = Image<std::uint8_t>;

/// 1 where value > threshold.
inline Mask threshold_mask(const Image<double>& img, double threshold = 0.5) {
  Mask m(img.width(), img.height(), 0);
  for (std::size_t i = 0; i < img.size(); ++i) m[i] = img[i] > threshold ? 1 : 0;
  return m;
}

inline std::size_t count_nonzero(const Mask& m) {
  std::size_t n = 0;
  for (auto v : m.data()) n += v != 0;
  return n;
}

}  // namespace hoi
