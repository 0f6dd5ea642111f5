#include "hoi/correspondence/pnp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <ceres/jet.h>
#include <ceres/rotation.h>

#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"

namespace hoi {
namespace {

// Control points in the object frame and the barycentric weights expressing
// each reference point in them.
struct ControlFrame {
  std::vector<Eigen::Vector3d> points;  // 4, or 3 when planar
  Eigen::MatrixXd alphas;               // n x points.size()
  bool planar = false;
};

ControlFrame build_control_frame(std::span<const Correspondence3D2D> corrs) {
  const auto n = static_cast<double>(corrs.size());
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& c : corrs) centroid += c.object_point;
  centroid /= n;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& c : corrs) {
    const Eigen::Vector3d d = c.object_point - centroid;
    cov += d * d.transpose();
  }
  cov /= n;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  const double largest = lambda(2);
  if (!(largest > 1e-20) || lambda(1) < 1e-10 * largest) {
    throw InputError("PnP reference points are collinear or coincident");
  }

  ControlFrame frame;
  frame.planar = lambda(0) < 1e-10 * largest;
  const int axes = frame.planar ? 2 : 3;
  frame.points.push_back(centroid);
  std::vector<Eigen::Vector3d> dirs;
  std::vector<double> lengths;
  for (int k = 0; k < axes; ++k) {
    const int col = 2 - k;
    dirs.push_back(eig.eigenvectors().col(col));
    lengths.push_back(std::sqrt(lambda(col)));
    frame.points.push_back(centroid + lengths.back() * dirs.back());
  }
  frame.alphas.resize(static_cast<Eigen::Index>(corrs.size()), axes + 1);
  for (std::size_t i = 0; i < corrs.size(); ++i) {
    const Eigen::Vector3d d = corrs[i].object_point - centroid;
    double rest = 1.0;
    for (int k = 0; k < axes; ++k) {
      const double a = dirs[k].dot(d) / lengths[k];
      frame.alphas(static_cast<Eigen::Index>(i), k + 1) = a;
      rest -= a;
    }
    frame.alphas(static_cast<Eigen::Index>(i), 0) = rest;
  }
  return frame;
}

struct Candidate {
  Pose6DoF pose;
  double error = std::numeric_limits<double>::infinity();
};

// Differences between control points in a null-space vector, one per pair.
std::vector<Eigen::Vector3d> pair_differences(const Eigen::VectorXd& v, int k_points) {
  std::vector<Eigen::Vector3d> out;
  for (int a = 0; a < k_points; ++a) {
    for (int b = a + 1; b < k_points; ++b) {
      out.push_back(v.segment<3>(3 * a) - v.segment<3>(3 * b));
    }
  }
  return out;
}

// Gauss-Newton on the control-point distance constraints.
Eigen::VectorXd refine_betas(Eigen::VectorXd betas,
                             const std::vector<std::vector<Eigen::Vector3d>>& diffs,
                             const std::vector<double>& rho) {
  const auto nb = betas.size();
  const auto np = static_cast<Eigen::Index>(rho.size());
  for (int it = 0; it < 10; ++it) {
    Eigen::MatrixXd jac(np, nb);
    Eigen::VectorXd res(np);
    for (Eigen::Index p = 0; p < np; ++p) {
      Eigen::Vector3d d = Eigen::Vector3d::Zero();
      for (Eigen::Index k = 0; k < nb; ++k) d += betas(k) * diffs[k][p];
      res(p) = d.squaredNorm() - rho[p];
      for (Eigen::Index k = 0; k < nb; ++k) jac(p, k) = 2.0 * d.dot(diffs[k][p]);
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-res);
    if (!step.allFinite()) break;
    betas += step;
    if (step.norm() < 1e-14 * (1.0 + betas.norm())) break;
  }
  return betas;
}

Candidate pose_from_betas(const Eigen::VectorXd& betas, const Eigen::MatrixXd& null_vectors,
                          const ControlFrame& frame, std::span<const Correspondence3D2D> corrs,
                          const Camera& camera) {
  const int k_points = static_cast<int>(frame.points.size());
  Eigen::VectorXd cc = Eigen::VectorXd::Zero(3 * k_points);
  for (Eigen::Index k = 0; k < betas.size(); ++k) cc += betas(k) * null_vectors.col(k);

  const auto n = static_cast<Eigen::Index>(corrs.size());
  Eigen::Matrix3Xd src(3, n), dst(3, n);
  double mean_z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Vector3d pc = Eigen::Vector3d::Zero();
    for (int j = 0; j < k_points; ++j) pc += frame.alphas(i, j) * cc.segment<3>(3 * j);
    dst.col(i) = pc;
    src.col(i) = corrs[static_cast<std::size_t>(i)].object_point;
    mean_z += pc.z();
  }
  if (mean_z < 0.0) dst = -dst;

  Candidate out;
  const Eigen::Matrix4d t = Eigen::umeyama(src, dst, false);
  if (!t.allFinite()) return out;
  const Eigen::Matrix3d r = t.topLeftCorner<3, 3>();
  out.pose = Pose6DoF(Eigen::Quaterniond(r), t.topRightCorner<3, 1>());
  out.error = mean_reprojection_error(corrs, out.pose, camera);
  if (!std::isfinite(out.error)) out.error = std::numeric_limits<double>::infinity();
  return out;
}

void check_input(std::span<const Correspondence3D2D> corrs, const Camera& camera) {
  if (corrs.size() < 4) {
    throw InsufficientDataError("PnP needs at least 4 correspondences, got " +
                                std::to_string(corrs.size()));
  }
  camera.validate();
  for (const auto& c : corrs) {
    if (!c.object_point.allFinite() || !c.pixel.allFinite()) {
      throw InputError("PnP correspondence is not finite");
    }
  }
}

}  // namespace

double mean_reprojection_error(std::span<const Correspondence3D2D> corrs, const Pose6DoF& pose,
                               const Camera& camera) {
  if (corrs.empty()) return 0.0;
  double total = 0.0;
  for (const auto& c : corrs) {
    const Eigen::Vector3d p = pose.apply(c.object_point);
    if (!(p.z() > 0.0)) return std::numeric_limits<double>::infinity();
    total += (camera.project_unchecked<double>(p) - c.pixel).norm();
  }
  return total / static_cast<double>(corrs.size());
}

PnPResult solve_epnp(std::span<const Correspondence3D2D> corrs, const Camera& camera) {
  check_input(corrs, camera);
  const ControlFrame frame = build_control_frame(corrs);
  const int k_points = static_cast<int>(frame.points.size());
  const auto n = static_cast<Eigen::Index>(corrs.size());

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 3 * k_points);
  const double f = camera.focal;
  const double cx = camera.principal.x();
  const double cy = camera.principal.y();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d& u = corrs[static_cast<std::size_t>(i)].pixel;
    for (int j = 0; j < k_points; ++j) {
      const double a = frame.alphas(i, j);
      m(2 * i, 3 * j) = a * f;
      m(2 * i, 3 * j + 2) = a * (cx - u.x());
      m(2 * i + 1, 3 * j + 1) = a * f;
      m(2 * i + 1, 3 * j + 2) = a * (cy - u.y());
    }
  }
  const Eigen::MatrixXd mtm = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mtm);
  const Eigen::MatrixXd& vecs = eig.eigenvectors();  // ascending eigenvalues

  std::vector<double> rho;
  for (int a = 0; a < k_points; ++a) {
    for (int b = a + 1; b < k_points; ++b) {
      rho.push_back((frame.points[a] - frame.points[b]).squaredNorm());
    }
  }
  const auto np = static_cast<Eigen::Index>(rho.size());

  const int max_dims = frame.planar ? 2 : 3;
  std::vector<std::vector<Eigen::Vector3d>> diffs;
  for (int k = 0; k < max_dims; ++k) diffs.push_back(pair_differences(vecs.col(k), k_points));

  Candidate best;
  auto consider = [&](Eigen::VectorXd betas) {
    std::vector<std::vector<Eigen::Vector3d>> used(diffs.begin(), diffs.begin() + betas.size());
    betas = refine_betas(betas, used, rho);
    Candidate c = pose_from_betas(betas, vecs.leftCols(betas.size()), frame, corrs, camera);
    if (c.error < best.error) best = c;
  };

  {  // one null vector: scale from the distance ratios
    double num = 0.0, den = 0.0;
    for (Eigen::Index p = 0; p < np; ++p) {
      const double dv = diffs[0][p].norm();
      num += std::sqrt(rho[p]) * dv;
      den += dv * dv;
    }
    Eigen::VectorXd b(1);
    b << num / den;
    consider(b);
  }
  {  // two null vectors: linearized [b11, b12, b22]
    Eigen::MatrixXd l(np, 3);
    Eigen::VectorXd r(np);
    for (Eigen::Index p = 0; p < np; ++p) {
      const Eigen::Vector3d& d1 = diffs[0][p];
      const Eigen::Vector3d& d2 = diffs[1][p];
      l.row(p) << d1.dot(d1), 2.0 * d1.dot(d2), d2.dot(d2);
      r(p) = rho[p];
    }
    Eigen::Vector3d x = l.colPivHouseholderQr().solve(r);
    if (x(0) < 0.0) x = -x;
    Eigen::VectorXd b(2);
    b(0) = std::sqrt(std::max(x(0), 0.0));
    b(1) = std::sqrt(std::max(x(2), 0.0)) * (x(1) < 0.0 ? -1.0 : 1.0);
    if (b.allFinite()) consider(b);
  }
  if (!frame.planar) {  // three null vectors: linearized products
    Eigen::MatrixXd l(np, 6);
    Eigen::VectorXd r(np);
    for (Eigen::Index p = 0; p < np; ++p) {
      const Eigen::Vector3d& d1 = diffs[0][p];
      const Eigen::Vector3d& d2 = diffs[1][p];
      const Eigen::Vector3d& d3 = diffs[2][p];
      l.row(p) << d1.dot(d1), 2.0 * d1.dot(d2), 2.0 * d1.dot(d3), d2.dot(d2), 2.0 * d2.dot(d3),
          d3.dot(d3);
      r(p) = rho[p];
    }
    Eigen::VectorXd x = l.colPivHouseholderQr().solve(r);
    if (x(0) < 0.0) x = -x;
    Eigen::VectorXd b(3);
    b(0) = std::sqrt(std::max(x(0), 0.0));
    b(1) = std::sqrt(std::max(x(3), 0.0)) * (x(1) < 0.0 ? -1.0 : 1.0);
    b(2) = std::sqrt(std::max(x(5), 0.0)) * (x(2) < 0.0 ? -1.0 : 1.0);
    if (b.allFinite()) consider(b);
  }

  if (!std::isfinite(best.error)) {
    throw InputError("PnP failed: no candidate placed the points in front of the camera");
  }
  PnPResult out;
  out.pose = best.pose;
  out.reprojection_error = best.error;
  out.refinement_trace = {best.error};
  out.planar = frame.planar;
  return out;
}

namespace {

struct Reprojection {
  const Correspondence3D2D* corrs;
  std::size_t count;
  Eigen::Matrix3d r0;
  Eigen::Vector3d t0;
  const Camera* camera;

  // Residuals at increment x = (omega, dt), omega left-multiplied onto r0.
  template <class T>
  void operator()(const T* x, T* residuals) const {
    for (std::size_t i = 0; i < count; ++i) {
      const Eigen::Vector3d base = r0 * corrs[i].object_point;
      const T p_in[3] = {T(base.x()), T(base.y()), T(base.z())};
      T p[3];
      ceres::AngleAxisRotatePoint(x, p_in, p);
      const Eigen::Matrix<T, 3, 1> pc(p[0] + T(t0.x()) + x[3], p[1] + T(t0.y()) + x[4],
                                      p[2] + T(t0.z()) + x[5]);
      const Eigen::Matrix<T, 2, 1> uv = camera->project_unchecked<T>(pc);
      residuals[2 * i] = uv.x() - T(corrs[i].pixel.x());
      residuals[2 * i + 1] = uv.y() - T(corrs[i].pixel.y());
    }
  }
};

}  // namespace

PnPResult solve_pnp(std::span<const Correspondence3D2D> corrs, const Camera& camera) {
  PnPResult result = solve_epnp(corrs, camera);
  using Jet = ceres::Jet<double, 6>;
  const auto n = corrs.size();

  Pose6DoF pose = result.pose;
  double error = result.reprojection_error;
  double lambda = 1e-3;
  std::vector<Jet> residuals(2 * n);
  for (int it = 0; it < 50 && error > 0.0; ++it) {
    const Reprojection fn{corrs.data(), n, pose.rotation().toRotationMatrix(), pose.translation(),
                          &camera};
    Jet x[6];
    for (int k = 0; k < 6; ++k) x[k] = Jet(0.0, k);
    fn(x, residuals.data());
    Eigen::MatrixXd jac(2 * n, 6);
    Eigen::VectorXd r(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      r(static_cast<Eigen::Index>(i)) = residuals[i].a;
      jac.row(static_cast<Eigen::Index>(i)) = residuals[i].v.transpose();
    }
    const Eigen::Matrix<double, 6, 6> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 6, 1> jtr = jac.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 10 && !accepted; ++attempt) {
      Eigen::Matrix<double, 6, 6> a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Matrix<double, 6, 1> step = a.ldlt().solve(-jtr);
      if (!step.allFinite()) break;
      const Pose6DoF trial = pose.perturbed(step.head<3>(), step.tail<3>());
      const double trial_error = mean_reprojection_error(corrs, trial, camera);
      if (trial_error < error) {
        pose = trial;
        error = trial_error;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    result.refinement_trace.push_back(error);
    if (!accepted) break;
    const auto m = result.refinement_trace.size();
    if (m >= 2 && result.refinement_trace[m - 2] - error < 1e-13 * (1.0 + error)) break;
  }
  result.pose = pose;
  result.reprojection_error = error;
  return result;
}

}  // namespace hoi
