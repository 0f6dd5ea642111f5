#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hoi/error.hpp"
#include "hoi/render/autodiff.hpp"
#include "hoi/render/image.hpp"

namespace hoi {

/// Floor on the mean absolute deviation in the depth normalizer.
inline constexpr double kDepthNormalizerEpsilon = 1e-8;

/// Mean |S - S_hat| + lambda_object * mean |S_o - S_o_hat|.
template <class T>
T silhouette_loss(const Image<T>& rendered, const Image<double>& observed,
                  const Image<T>& rendered_object, const Image<double>& observed_object,
                  double lambda_object) {
  if (!rendered.same_shape(observed) || !rendered_object.same_shape(observed_object) ||
      !rendered.same_shape(rendered_object)) {
    throw InputError("silhouette_loss: image dimensions differ");
  }
  if (rendered.empty()) throw InputError("silhouette_loss: empty images");
  T joint(0.0);
  T object(0.0);
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    joint += abs0(rendered[i] - T(observed[i]));
    object += abs0(rendered_object[i] - T(observed_object[i]));
  }
  const double n = static_cast<double>(rendered.size());
  return joint / n + T(lambda_object) * (object / n);
}

/// Scale-shift normalization: (d - median) / max(mean |d - median|, eps).
/// The median of an even count is the mean of the two middle values.
/// Throws InputError on an empty input.
template <class T>
std::vector<T> normalize_depth(std::span<const T> values) {
  if (values.empty()) throw InputError("normalize_depth: empty region");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t mid = values.size() / 2;
  auto by_value = [&](std::size_t a, std::size_t b) {
    const double va = value_of(values[a]), vb = value_of(values[b]);
    return va < vb || (va == vb && a < b);
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(mid), order.end(),
                   by_value);
  T median = values[order[mid]];
  if (values.size() % 2 == 0) {
    const auto lower = *std::max_element(order.begin(),
                                         order.begin() + static_cast<std::ptrdiff_t>(mid),
                                         by_value);
    median = (median + values[lower]) * 0.5;
  }
  T spread(0.0);
  for (const T& v : values) spread += abs0(v - median);
  spread /= static_cast<double>(values.size());
  if (value_of(spread) < kDepthNormalizerEpsilon) spread = T(kDepthNormalizerEpsilon);
  std::vector<T> out;
  out.reserve(values.size());
  for (const T& v : values) out.push_back((v - median) / spread);
  return out;
}

/// Normalizes the region pixels of an image; pixels outside the region are 0.
template <class T>
Image<T> normalize_depth(const Image<T>& depth, const Mask& region) {
  if (!depth.same_shape(region)) throw InputError("normalize_depth: region size mismatch");
  std::vector<T> values;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (region[i]) {
      values.push_back(depth[i]);
      where.push_back(i);
    }
  }
  const auto norm = normalize_depth<T>(values);
  Image<T> out(depth.width(), depth.height(), T(0.0));
  for (std::size_t k = 0; k < where.size(); ++k) out[where[k]] = norm[k];
  return out;
}

namespace detail {

// Mean |E*(a) - E*(b)| over region pixels where both depths are valid (> 0).
template <class T>
T normalized_depth_gap(const Image<T>& rendered, const Image<double>& observed,
                       const Mask& region, const char* what) {
  std::vector<T> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    if (region[i] && value_of(rendered[i]) > 0.0 && observed[i] > 0.0) {
      a.push_back(rendered[i]);
      b.push_back(observed[i]);
    }
  }
  if (a.empty()) throw InputError(std::string("relative_depth_loss: empty ") + what + " region");
  const auto na = normalize_depth<T>(a);
  const auto nb = normalize_depth<double>(b);
  T total(0.0);
  for (std::size_t k = 0; k < na.size(); ++k) total += abs0(na[k] - T(nb[k]));
  return total / static_cast<double>(na.size());
}

}  // namespace detail

/// Scale-shift invariant depth loss: mean |E*(D) - E*(D_hat)| over the
/// human-object region plus lambda_object times the same over the object
/// region (rendered object-only depth against the observed depth there).
/// Pixels with no rendered or observed depth are excluded.
template <class T>
T relative_depth_loss(const Image<T>& rendered, const Image<T>& rendered_object,
                      const Image<double>& observed, const Mask& region,
                      const Mask& object_region, double lambda_object) {
  if (!rendered.same_shape(observed) || !rendered_object.same_shape(observed) ||
      !region.same_shape(observed) || !object_region.same_shape(observed)) {
    throw InputError("relative_depth_loss: image dimensions differ");
  }
  T loss = detail::normalized_depth_gap<T>(rendered, observed, region, "human-object");
  if (lambda_object != 0.0) {
    loss += T(lambda_object) *
            detail::normalized_depth_gap<T>(rendered_object, observed, object_region, "object");
  }
  return loss;
}

/// Mean rendered object depth over the object region (pixels with depth > 0).
template <class T>
T mean_region_depth(const Image<T>& depth, const Mask& region) {
  if (!depth.same_shape(region)) throw InputError("mean_region_depth: size mismatch");
  T total(0.0);
  std::size_t n = 0;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (region[i] && value_of(depth[i]) > 0.0) {
      total += depth[i];
      ++n;
    }
  }
  if (n == 0) throw InputError("human_depth_anchor_loss: empty object region");
  return total / static_cast<double>(n);
}

/// |mean(D_o) - D_h|.
template <class T>
T human_depth_anchor_loss(const Image<T>& object_depth, const Mask& object_region,
                          double human_depth) {
  return abs0(mean_region_depth<T>(object_depth, object_region) - T(human_depth));
}

}  // namespace hoi
