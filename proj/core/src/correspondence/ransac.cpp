#include "hoi/correspondence/ransac.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "hoi/error.hpp"

namespace hoi {
namespace {

// Similarity taking the points to zero mean and mean distance sqrt(2).
Eigen::Matrix3d normalizer(std::span<const Eigen::Vector2d> pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double spread = 0.0;
  for (const auto& p : pts) spread += (p - mean).norm();
  spread /= static_cast<double>(pts.size());
  const double s = spread > 0.0 ? std::sqrt(2.0) / spread : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * mean.x(), 0, s, -s * mean.y(), 0, 0, 1;
  return t;
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

bool has_collinear_triple(const std::array<Eigen::Vector2d, 4>& p) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        const double area = std::abs(cross2(p[j] - p[i], p[k] - p[i]));
        const double scale = (p[j] - p[i]).squaredNorm() + (p[k] - p[i]).squaredNorm();
        if (area <= 1e-9 * scale) return true;
      }
    }
  }
  return false;
}

}  // namespace

Eigen::Matrix3d fit_homography(std::span<const Eigen::Vector2d> src,
                               std::span<const Eigen::Vector2d> dst) {
  if (src.size() != dst.size()) throw InputError("homography point lists differ in length");
  if (src.size() < 4) throw InsufficientDataError("homography needs at least 4 points");
  const Eigen::Matrix3d ts = normalizer(src);
  const Eigen::Matrix3d td = normalizer(dst);
  Eigen::MatrixXd a(2 * src.size(), 9);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Eigen::Vector3d p = ts * src[i].homogeneous();
    const Eigen::Vector3d q = td * dst[i].homogeneous();
    const double x = p.x(), y = p.y(), u = q.x(), v = q.y();
    a.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
    a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  Eigen::Matrix3d out = td.inverse() * hn * ts;
  if (std::abs(out(2, 2)) > 1e-12) out /= out(2, 2);
  return out;
}

double homography_transfer_error(const Eigen::Matrix3d& h, const Eigen::Vector2d& a,
                                 const Eigen::Vector2d& b) {
  const Eigen::Vector3d p = h * a.homogeneous();
  if (std::abs(p.z()) < 1e-12) return std::numeric_limits<double>::infinity();
  return (p.hnormalized() - b).norm();
}

RansacResult ransac_homography_filter(std::span<const Match2D> matches,
                                      const RansacOptions& options) {
  if (matches.size() < 4) {
    throw InsufficientDataError("RANSAC needs at least 4 matches, got " +
                                std::to_string(matches.size()));
  }
  if (options.iterations <= 0 || !(options.threshold_px > 0.0)) {
    throw InputError("RANSAC iterations and threshold must be positive");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, matches.size() - 1);

  std::size_t best_count = 0;
  double best_error = std::numeric_limits<double>::infinity();
  Eigen::Matrix3d best_h = Eigen::Matrix3d::Identity();
  bool found = false;

  for (int it = 0; it < options.iterations; ++it) {
    std::array<std::size_t, 4> idx{};
    for (int k = 0; k < 4; ++k) {
      bool fresh = false;
      while (!fresh) {
        idx[k] = pick(rng);
        fresh = true;
        for (int m = 0; m < k; ++m) fresh = fresh && idx[m] != idx[k];
      }
    }
    std::array<Eigen::Vector2d, 4> src, dst;
    for (int k = 0; k < 4; ++k) {
      src[k] = matches[idx[k]].pixel_a;
      dst[k] = matches[idx[k]].pixel_b;
    }
    if (has_collinear_triple(src) || has_collinear_triple(dst)) continue;
    const Eigen::Matrix3d h = fit_homography(src, dst);
    if (!h.allFinite() || std::abs(h.determinant()) < 1e-12) continue;

    std::size_t count = 0;
    double total = 0.0;
    for (const auto& m : matches) {
      const double e = homography_transfer_error(h, m.pixel_a, m.pixel_b);
      if (e < options.threshold_px) {
        ++count;
        total += e;
      }
    }
    if (count > best_count || (count == best_count && count > 0 && total < best_error)) {
      best_count = count;
      best_error = total;
      best_h = h;
      found = true;
    }
  }

  RansacResult result;
  if (!found) return result;
  result.homography = best_h;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (homography_transfer_error(best_h, matches[i].pixel_a, matches[i].pixel_b) <
        options.threshold_px) {
      result.inliers.push_back(matches[i]);
      result.inlier_indices.push_back(i);
    }
  }
  return result;
}

}  // namespace hoi
