#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/render/autodiff.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/image.hpp"

namespace hoi {

struct SoftRasterSettings {
  /// Edge softness in pixels.
  double sigma = 0.5;
  /// A face is ignored at pixels more than cutoff_sigmas * sigma outside it
  /// (occupancy below sigmoid(-cutoff_sigmas)).
  double cutoff_sigmas = 20.0;
  /// Faces with any vertex closer than this (meters) are skipped.
  double near_plane = 1e-3;
};

template <class T>
struct SoftImages {
  Image<T> silhouette;
  /// Occupancy-weighted front-to-back composite depth, 0 where nothing contributes.
  Image<T> depth;
};

/// Edge adjacency and connected components of a face list.
struct MeshTopology {
  static constexpr std::int32_t kNoNeighbor = -1;
  static constexpr std::int32_t kNonManifold = -2;
  /// Face across edge (v[e], v[e+1]) of each face.
  std::vector<std::array<std::int32_t, 3>> neighbor;
  std::vector<std::int32_t> component;
  /// Every edge of the component has exactly one oppositely wound partner.
  std::vector<bool> component_closed;

  int component_count() const { return static_cast<int>(component_closed.size()); }
};

MeshTopology compute_topology(std::span<const Face> faces);

/// Faces whose camera-frame vertices have scalar type T. The topology is
/// computed on the fly when not supplied.
template <class T>
struct FaceLayer {
  std::span<const Eigen::Matrix<T, 3, 1>> vertices;
  std::span<const Face> faces;
  const MeshTopology* topology = nullptr;
};

namespace detail {

template <class T>
using Vec2T = Eigen::Matrix<T, 2, 1>;

template <class T>
T cross2(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <class T>
struct ProjectedFace {
  std::array<Vec2T<T>, 3> p;
  std::array<T, 3> inv_z;
  double orient = 1.0;
};

template <class T>
bool project_face(const Eigen::Matrix<T, 3, 1>& a, const Eigen::Matrix<T, 3, 1>& b,
                  const Eigen::Matrix<T, 3, 1>& c, const Camera& camera, double near_plane,
                  ProjectedFace<T>& out) {
  if (value_of(a.z()) < near_plane || value_of(b.z()) < near_plane ||
      value_of(c.z()) < near_plane) {
    return false;
  }
  out.p = {camera.project_unchecked<T>(a), camera.project_unchecked<T>(b),
           camera.project_unchecked<T>(c)};
  out.inv_z = {T(1.0) / a.z(), T(1.0) / b.z(), T(1.0) / c.z()};
  const double area2 =
      value_of(cross2<T>(out.p[1] - out.p[0], out.p[2] - out.p[0]));
  if (!(std::abs(area2) > 1e-12)) return false;
  out.orient = area2 > 0.0 ? 1.0 : -1.0;
  return true;
}

template <class T>
T sigmoid(const T& x) {
  using std::exp;
  return T(1.0) / (T(1.0) + exp(-x));
}

inline double segment_distance_sq(const Eigen::Vector2d& q, const Eigen::Vector2d& a,
                                  const Eigen::Vector2d& b) {
  const Eigen::Vector2d e = b - a;
  const double tau = std::clamp((q - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
  return (q - (a + tau * e)).squaredNorm();
}

template <class T>
T segment_distance(const Vec2T<T>& q, const Vec2T<T>& a, const Vec2T<T>& b) {
  const Vec2T<T> e = b - a;
  T tau = (q - a).dot(e) / e.squaredNorm();
  if (value_of(tau) < 0.0) tau = T(0.0);
  if (value_of(tau) > 1.0) tau = T(1.0);
  using std::sqrt;
  return sqrt((q - (a + e * tau)).squaredNorm());
}

// Faces of one layer that take part in rendering, with contour flags.
template <class T>
struct LayerFaces {
  std::vector<ProjectedFace<T>> projected;
  std::vector<ProjectedFace<double>> values;
  std::vector<std::uint32_t> face_index;
  std::vector<std::int32_t> component;
  std::vector<std::array<bool, 3>> contour;
};

// Front-facing faces of closed components, every face of open ones. An edge
// is a contour edge when the face across it is missing, not rendered, or
// wound the other way in the image.
template <class T, class V>
LayerFaces<T> prepare_layer(std::span<const Eigen::Matrix<V, 3, 1>> vertices,
                            std::span<const Face> faces, const MeshTopology& topo,
                            const Camera& camera, double near_plane) {
  LayerFaces<T> out;
  const std::size_t nf = faces.size();
  std::vector<std::int32_t> slot(nf, -1);
  std::vector<double> orient(nf, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    const Face& face = faces[f];
    ProjectedFace<T> pf;
    const Eigen::Matrix<T, 3, 1> a = vertices[face[0]].template cast<T>();
    const Eigen::Matrix<T, 3, 1> b = vertices[face[1]].template cast<T>();
    const Eigen::Matrix<T, 3, 1> c = vertices[face[2]].template cast<T>();
    if (!project_face<T>(a, b, c, camera, near_plane, pf)) continue;
    orient[f] = pf.orient;
    if (topo.component_closed[static_cast<std::size_t>(topo.component[f])]) {
      Eigen::Vector3d va, vb, vc;
      for (int k = 0; k < 3; ++k) {
        va[k] = value_of(a[k]);
        vb[k] = value_of(b[k]);
        vc[k] = value_of(c[k]);
      }
      if (!((vb - va).cross(vc - va).dot(va) < 0.0)) continue;  // back-facing
    }
    slot[f] = static_cast<std::int32_t>(out.projected.size());
    ProjectedFace<double> pv;
    for (int i = 0; i < 3; ++i) {
      pv.p[i] = Eigen::Vector2d(value_of(pf.p[i].x()), value_of(pf.p[i].y()));
      pv.inv_z[i] = value_of(pf.inv_z[i]);
    }
    pv.orient = pf.orient;
    out.projected.push_back(pf);
    out.values.push_back(pv);
    out.face_index.push_back(static_cast<std::uint32_t>(f));
    out.component.push_back(topo.component[f]);
  }
  out.contour.resize(out.projected.size());
  for (std::size_t s = 0; s < out.projected.size(); ++s) {
    const std::size_t f = out.face_index[s];
    for (int e = 0; e < 3; ++e) {
      const std::int32_t g = topo.neighbor[f][static_cast<std::size_t>(e)];
      out.contour[s][static_cast<std::size_t>(e)] =
          g < 0 || slot[static_cast<std::size_t>(g)] < 0 ||
          orient[static_cast<std::size_t>(g)] != orient[f];
    }
  }
  return out;
}

// Depth at the point of edge e closest to q.
template <class T>
T edge_depth(const ProjectedFace<T>& f, int e, const Vec2T<T>& q) {
  const std::size_t i = static_cast<std::size_t>(e);
  const std::size_t j = static_cast<std::size_t>((e + 1) % 3);
  const Vec2T<T> d = f.p[j] - f.p[i];
  T tau = (q - f.p[i]).dot(d) / d.squaredNorm();
  if (value_of(tau) < 0.0) tau = T(0.0);
  if (value_of(tau) > 1.0) tau = T(1.0);
  return T(1.0) / ((T(1.0) - tau) * f.inv_z[i] + tau * f.inv_z[j]);
}

// log(sigmoid(x)), stable for large |x|.
template <class T>
T log_sigmoid(const T& x) {
  using std::exp;
  using std::log;
  if (value_of(x) >= 0.0) return -log(T(1.0) + exp(-x));
  return x - log(T(1.0) + exp(x));
}

// Identity on [0, 1], saturating smoothly (tanh) to at most `width` beyond it.
template <class T>
T soft_unit_clamp(const T& t, double width) {
  using std::tanh;
  if (value_of(t) < 0.0) return T(width) * tanh(t / T(width));
  if (value_of(t) > 1.0) return T(1.0) + T(width) * tanh((t - T(1.0)) / T(width));
  return t;
}

// a * x + b * y + c.
template <class T>
struct Affine2 {
  T a, b, c;
  T at(double x, double y) const { return a * x + b * y + c; }
};

// Per-face affine forms: signed distance to each edge line (pixels, positive
// inside) and barycentric coordinates.
template <class T>
struct FaceCoeffs {
  std::array<Affine2<T>, 3> line;
  std::array<Affine2<T>, 3> bary;
  std::array<T, 3> inv_z;
};

template <class T>
Affine2<T> edge_line(const ProjectedFace<T>& f, int e) {
  const Vec2T<T>& p = f.p[static_cast<std::size_t>(e)];
  const Vec2T<T> d = f.p[static_cast<std::size_t>((e + 1) % 3)] - p;
  using std::sqrt;
  const T k = T(f.orient) / sqrt(d.squaredNorm());
  return {-d.y() * k, d.x() * k, (d.y() * p.x() - d.x() * p.y()) * k};
}

template <class T>
FaceCoeffs<T> face_coeffs(const ProjectedFace<T>& f) {
  FaceCoeffs<T> c;
  const T area2 = cross2<T>(f.p[1] - f.p[0], f.p[2] - f.p[0]);
  for (int i = 0; i < 3; ++i) {
    c.line[static_cast<std::size_t>(i)] = edge_line<T>(f, i);
    const Vec2T<T>& u = f.p[static_cast<std::size_t>((i + 1) % 3)];
    const Vec2T<T>& v = f.p[static_cast<std::size_t>((i + 2) % 3)];
    c.bary[static_cast<std::size_t>(i)] = {(u.y() - v.y()) / area2, (v.x() - u.x()) / area2,
                                           cross2<T>(u, v) / area2};
  }
  c.inv_z = f.inv_z;
  return c;
}

// Depth with barycentrics softly clamped to the face: exact inside, bounded
// extrapolation outside.
template <class T>
T clamped_face_depth(const FaceCoeffs<T>& f, double x, double y) {
  constexpr double kWidth = 0.1;
  T num(0.0);
  T den(0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const T l = soft_unit_clamp<T>(f.bary[i].at(x, y), kWidth);
    num += l;
    den += l * f.inv_z[i];
  }
  return num / den;
}

inline double plane_depth(const FaceCoeffs<double>& f, double x, double y) {
  return 1.0 / (f.bary[0].at(x, y) * f.inv_z[0] + f.bary[1].at(x, y) * f.inv_z[1] +
                f.bary[2].at(x, y) * f.inv_z[2]);
}

inline bool covers(const FaceCoeffs<double>& f, double x, double y) {
  return f.line[0].at(x, y) >= 0.0 && f.line[1].at(x, y) >= 0.0 && f.line[2].at(x, y) >= 0.0;
}

// One component's occupancy and depth at a pixel.
template <class T>
struct Layered {
  T occupancy;
  T depth;
  double depth_value;
  std::uint32_t order;
};

template <class T>
struct LayeredImage {
  std::vector<std::uint32_t> pixel;
  std::vector<Layered<T>> entries;
  std::uint32_t components = 0;
};

// Renders every component of one layer into `out`, vertices of type V promoted to T.
template <class T, class V>
void render_components(const FaceLayer<V>& layer, const Camera& camera,
                       const SoftRasterSettings& settings, LayeredImage<T>& out) {
  const int W = camera.width;
  const int H = camera.height;
  const double sigma = settings.sigma;
  const double reach = settings.cutoff_sigmas * sigma;
  // Depth blending is sharper than the silhouette so that depth stays exact
  // a few sigma inside a face.
  const double depth_scale = sigma / 4.0;
  constexpr double kDepthWeightRange = 25.0;

  MeshTopology local;
  const MeshTopology* topo = layer.topology;
  if (topo == nullptr) {
    local = compute_topology(layer.faces);
    topo = &local;
  }
  const auto lf = prepare_layer<T, V>(layer.vertices, layer.faces, *topo, camera,
                                      settings.near_plane);
  std::vector<FaceCoeffs<double>> cv;
  std::vector<FaceCoeffs<T>> ct;
  cv.reserve(lf.projected.size());
  ct.reserve(lf.projected.size());
  for (std::size_t s = 0; s < lf.projected.size(); ++s) {
    cv.push_back(face_coeffs<double>(lf.values[s]));
    ct.push_back(face_coeffs<T>(lf.projected[s]));
  }

  // Steep faces (grazing the view) get little depth weight: their depth
  // changes too fast across a pixel for a stable blend. The penalty uses the
  // relative depth slope per pixel, |grad(1/z)| / (1/z), times the focal length.
  constexpr double kSteepSlope = 3.0;
  std::vector<double> log_steep_v(lf.projected.size());
  std::vector<T> log_steep_t(lf.projected.size());
  for (std::size_t s = 0; s < lf.projected.size(); ++s) {
    using std::log;
    using std::sqrt;
    const auto& fc = ct[s];
    T gx(0.0), gy(0.0), iz(0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      gx += fc.bary[i].a * fc.inv_z[i];
      gy += fc.bary[i].b * fc.inv_z[i];
      iz += fc.inv_z[i] / 3.0;
    }
    const T g = sqrt(gx * gx + gy * gy) / iz * (camera.focal / kSteepSlope);
    log_steep_t[s] = -2.0 * log(T(1.0) + g * g);
    log_steep_v[s] = value_of(log_steep_t[s]);
  }

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(topo->component_count()));
  for (std::size_t s = 0; s < lf.projected.size(); ++s) {
    members[static_cast<std::size_t>(lf.component[s])].push_back(s);
  }

  std::vector<double> log_occ;
  for (const auto& faces : members) {
    if (faces.empty()) continue;
    std::vector<std::pair<std::size_t, int>> outline;
    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    for (std::size_t s : faces) {
      for (int i = 0; i < 3; ++i) {
        const auto& p = lf.values[s].p[static_cast<std::size_t>(i)];
        minx = std::min(minx, p.x());
        maxx = std::max(maxx, p.x());
        miny = std::min(miny, p.y());
        maxy = std::max(maxy, p.y());
        if (lf.contour[s][static_cast<std::size_t>(i)]) outline.emplace_back(s, i);
      }
    }
    if (outline.empty()) continue;

    // Convex outline: every vertex on the inner side of every outline line.
    // Collinear outline edges share a line and are kept once.
    std::vector<Affine2<T>> lines;
    std::vector<Affine2<double>> line_values;
    bool convex = true;
    const double tol = 1e-9 * std::max({1.0, maxx - minx, maxy - miny});
    for (const auto& [s, e] : outline) {
      const Affine2<double>& l = cv[s].line[static_cast<std::size_t>(e)];
      const auto& p0 = lf.values[s].p[static_cast<std::size_t>(e)];
      const auto& p1 = lf.values[s].p[static_cast<std::size_t>((e + 1) % 3)];
      bool duplicate = false;
      for (const auto& m : line_values) {
        if (m.a * l.a + m.b * l.b > 0.0 && std::abs(m.at(p0.x(), p0.y())) <= tol &&
            std::abs(m.at(p1.x(), p1.y())) <= tol) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      for (std::size_t s2 : faces) {
        for (const auto& p : lf.values[s2].p) {
          if (l.at(p.x(), p.y()) < -tol) convex = false;
        }
      }
      line_values.push_back(l);
      const Affine2<T>& lt = ct[s].line[static_cast<std::size_t>(e)];
      lines.push_back({lt.a / sigma, lt.b / sigma, lt.c / sigma});
    }

    const int x0 = std::max(0, static_cast<int>(std::ceil(minx - reach - 0.5)));
    const int x1 = std::min(W - 1, static_cast<int>(std::floor(maxx + reach - 0.5)));
    const int y0 = std::max(0, static_cast<int>(std::ceil(miny - reach - 0.5)));
    const int y1 = std::min(H - 1, static_cast<int>(std::floor(maxy + reach - 0.5)));
    log_occ.resize(faces.size());
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5, py = y + 0.5;
        const Eigen::Vector2d q(px, py);

        // Nearest outline edge, on values.
        std::size_t best = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < outline.size(); ++k) {
          const auto& pv = lf.values[outline[k].first];
          const int e = outline[k].second;
          const double sq = segment_distance_sq(q, pv.p[static_cast<std::size_t>(e)],
                                                pv.p[static_cast<std::size_t>((e + 1) % 3)]);
          if (sq < best_sq) {
            best_sq = sq;
            best = k;
          }
        }
        // Front-most covering face, on values.
        std::size_t cover = 0;
        double cover_depth = std::numeric_limits<double>::infinity();
        for (std::size_t s : faces) {
          if (!covers(cv[s], px, py)) continue;
          const double z = plane_depth(cv[s], px, py);
          if (z < cover_depth) {
            cover_depth = z;
            cover = s;
          }
        }
        const bool inside = std::isfinite(cover_depth);
        if (!inside && std::sqrt(best_sq) > reach) continue;

        T occupancy;
        T depth;
        if (convex) {
          occupancy = T(1.0);
          for (const auto& l : lines) occupancy *= sigmoid<T>(l.at(px, py));

          // Faces of a convex outline do not overlap: blend their depths by
          // sharp smooth occupancies, normalized in log space. The cheap
          // bound min(x, 0) is within log 2 of log sigmoid(x).
          double top = -std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k < faces.size(); ++k) {
            double approx = 0.0;
            for (const auto& l : cv[faces[k]].line) approx += std::min(0.0, l.at(px, py));
            log_occ[k] = approx / depth_scale;
            top = std::max(top, log_occ[k]);
          }
          double exact_top = -std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k < faces.size(); ++k) {
            if (log_occ[k] < top - kDepthWeightRange - 3.0) {
              log_occ[k] = -std::numeric_limits<double>::infinity();
              continue;
            }
            double v = log_steep_v[faces[k]];
            for (const auto& l : cv[faces[k]].line) v += log_sigmoid<double>(l.at(px, py) / depth_scale);
            log_occ[k] = v;
            exact_top = std::max(exact_top, v);
          }
          T weight_sum(0.0);
          T weighted(0.0);
          using std::exp;
          for (std::size_t k = 0; k < faces.size(); ++k) {
            if (log_occ[k] < exact_top - kDepthWeightRange) continue;
            const auto& f = ct[faces[k]];
            T lw = log_steep_t[faces[k]];
            for (const auto& l : f.line) lw += log_sigmoid<T>(l.at(px, py) / depth_scale);
            const T w = exp(lw - T(exact_top));
            weight_sum += w;
            weighted += w * clamped_face_depth<T>(f, px, py);
          }
          depth = weighted / weight_sum;
        } else {
          const auto& pf = lf.projected[outline[best].first];
          const int e = outline[best].second;
          const Vec2T<T> qt{T(px), T(py)};
          const T d = segment_distance<T>(qt, pf.p[static_cast<std::size_t>(e)],
                                          pf.p[static_cast<std::size_t>((e + 1) % 3)]);
          occupancy = sigmoid<T>((inside ? d : -d) / T(sigma));
          if (inside) {
            const auto& f = ct[cover];
            depth = T(1.0) / (f.bary[0].at(px, py) * f.inv_z[0] +
                              f.bary[1].at(px, py) * f.inv_z[1] +
                              f.bary[2].at(px, py) * f.inv_z[2]);
          } else {
            depth = edge_depth<T>(pf, e, qt);
          }
        }
        out.pixel.push_back(static_cast<std::uint32_t>(y * W + x));
        out.entries.push_back({occupancy, depth, value_of(depth), out.components});
      }
    }
    ++out.components;
  }
}

}  // namespace detail

/// Pre-rendered component layers of meshes that do not move between calls.
using SoftLayerCache = detail::LayeredImage<double>;

/// Renders constant layers once for reuse across rasterize_soft calls.
SoftLayerCache prerender_soft(std::span<const FaceLayer<double>> layers, const Camera& camera,
                              const SoftRasterSettings& settings);

/// Soft silhouette and depth of all faces in `variable` (scalar type T, e.g. an
/// autodiff type) over pre-rendered constant layers.
///
/// Each connected component is rendered from its front faces (all faces when
/// the component is open). Its occupancy s_c is the product of
/// sigmoid(l_e / sigma) over the lines l_e of its outline edges when the
/// outline is convex, else sigmoid(d / sigma) with d the signed distance to the
/// outline (pixels, positive inside). For a convex outline its depth z_c
/// blends the face depths by face occupancies at sigma / 4, with grazing faces
/// down-weighted; otherwise z_c is the nearest covering face's depth, or that
/// of the closest outline point.
/// Components composite front to back: silhouette = 1 - prod(1 - s_c),
/// depth = sum(w_c z_c) / sum(w_c) with w_c = s_c * prod_{g in front}(1 - s_g).
template <class T>
SoftImages<T> rasterize_soft(std::span<const FaceLayer<T>> variable, const SoftLayerCache& constant,
                             const Camera& camera, const SoftRasterSettings& settings) {
  const int W = camera.width;
  const int H = camera.height;
  const std::size_t npix = static_cast<std::size_t>(W) * static_cast<std::size_t>(H);

  detail::LayeredImage<T> moving;
  for (const auto& layer : variable) detail::render_components<T, T>(layer, camera, settings, moving);
  const std::size_t nm = moving.entries.size();
  const std::size_t total = nm + constant.entries.size();

  // Bucket entries by pixel (counting sort), then composite each pixel.
  auto pixel_at = [&](std::size_t i) {
    return i < nm ? moving.pixel[i] : constant.pixel[i - nm];
  };
  auto depth_at = [&](std::size_t i) {
    return i < nm ? moving.entries[i].depth_value : constant.entries[i - nm].depth_value;
  };
  auto order_at = [&](std::size_t i) {
    return i < nm ? moving.entries[i].order : moving.components + constant.entries[i - nm].order;
  };
  std::vector<std::uint32_t> start(npix + 1, 0);
  for (std::size_t i = 0; i < total; ++i) ++start[pixel_at(i) + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> bucket(total);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < total; ++i) {
      bucket[fill[pixel_at(i)]++] = static_cast<std::uint32_t>(i);
    }
  }

  SoftImages<T> out{Image<T>(W, H, T(0.0)), Image<T>(W, H, T(0.0))};
  for (std::size_t p = 0; p < npix; ++p) {
    const auto b = bucket.begin() + start[p];
    const auto e = bucket.begin() + start[p + 1];
    if (b == e) continue;
    std::sort(b, e, [&](std::uint32_t i, std::uint32_t j) {
      if (depth_at(i) != depth_at(j)) return depth_at(i) < depth_at(j);
      return order_at(i) < order_at(j);
    });
    // Coverage as a sum of weights rather than 1 - transmittance keeps full
    // precision where every occupancy is tiny.
    T transmit(1.0);
    T coverage(0.0);
    T weighted_depth(0.0);
    for (auto it = b; it != e; ++it) {
      T occupancy, depth;
      if (*it < nm) {
        occupancy = moving.entries[*it].occupancy;
        depth = moving.entries[*it].depth;
      } else {
        occupancy = T(constant.entries[*it - nm].occupancy);
        depth = T(constant.entries[*it - nm].depth);
      }
      const T w = occupancy * transmit;
      coverage += w;
      weighted_depth += w * depth;
      transmit *= T(1.0) - occupancy;
    }
    out.silhouette[p] = coverage;
    if (value_of(coverage) > 0.0) out.depth[p] = weighted_depth / coverage;
  }
  return out;
}

/// As above, rendering the constant layers on the fly.
template <class T>
SoftImages<T> rasterize_soft(std::span<const FaceLayer<T>> variable,
                             std::span<const FaceLayer<double>> constant, const Camera& camera,
                             const SoftRasterSettings& settings) {
  return rasterize_soft<T>(variable, prerender_soft(constant, camera, settings), camera, settings);
}

/// Transforms object-space vertices by a pose into the camera frame.
std::vector<Eigen::Vector3d> posed_vertices(const TriangleMesh& mesh, const Pose6DoF& pose);

struct PosedMesh {
  const TriangleMesh* mesh = nullptr;
  Pose6DoF pose;
};

/// Soft silhouette and depth of posed meshes. Throws InputError when the list
/// is empty or sigma <= 0.
SoftImages<double> render_soft(std::span<const PosedMesh> meshes, const Camera& camera,
                               const SoftRasterSettings& settings = {});

}  // namespace hoi
