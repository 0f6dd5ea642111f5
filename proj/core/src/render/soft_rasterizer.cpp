#include "hoi/render/soft_rasterizer.hpp"

#include <map>

namespace hoi {

MeshTopology compute_topology(std::span<const Face> faces) {
  MeshTopology topo;
  const std::size_t nf = faces.size();
  topo.neighbor.assign(nf, {MeshTopology::kNoNeighbor, MeshTopology::kNoNeighbor,
                            MeshTopology::kNoNeighbor});
  // Directed edge -> (face, edge slot); a second use of the same directed edge
  // means inconsistent winding or non-manifold geometry.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::pair<std::uint32_t, int>>>
      edges;
  for (std::size_t f = 0; f < nf; ++f) {
    for (int e = 0; e < 3; ++e) {
      const std::uint32_t a = faces[f][static_cast<std::size_t>(e)];
      const std::uint32_t b = faces[f][static_cast<std::size_t>((e + 1) % 3)];
      edges[{a, b}].emplace_back(static_cast<std::uint32_t>(f), e);
    }
  }
  std::vector<std::uint32_t> parent(nf);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [key, uses] : edges) {
    const auto rev = edges.find({key.second, key.first});
    const bool clean = uses.size() == 1 && rev != edges.end() && rev->second.size() == 1;
    for (const auto& [f, e] : uses) {
      auto& slot = topo.neighbor[f][static_cast<std::size_t>(e)];
      if (clean) {
        slot = static_cast<std::int32_t>(rev->second.front().first);
        parent[find(f)] = find(rev->second.front().first);
      } else if (uses.size() > 1 || (rev != edges.end() && rev->second.size() > 1)) {
        slot = MeshTopology::kNonManifold;
      }
    }
  }
  std::vector<std::int32_t> label(nf, -1);
  topo.component.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::uint32_t r = find(static_cast<std::uint32_t>(f));
    if (label[r] < 0) {
      label[r] = topo.component_count();
      topo.component_closed.push_back(true);
    }
    topo.component[f] = label[r];
  }
  for (std::size_t f = 0; f < nf; ++f) {
    for (int e = 0; e < 3; ++e) {
      if (topo.neighbor[f][static_cast<std::size_t>(e)] < 0) {
        topo.component_closed[static_cast<std::size_t>(topo.component[f])] = false;
      }
    }
  }
  return topo;
}

SoftLayerCache prerender_soft(std::span<const FaceLayer<double>> layers, const Camera& camera,
                              const SoftRasterSettings& settings) {
  SoftLayerCache cache;
  for (const auto& layer : layers) {
    detail::render_components<double, double>(layer, camera, settings, cache);
  }
  return cache;
}

std::vector<Eigen::Vector3d> posed_vertices(const TriangleMesh& mesh, const Pose6DoF& pose) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(mesh.vertex_count());
  for (const auto& v : mesh.vertices()) out.push_back(pose.apply(v));
  return out;
}

SoftImages<double> render_soft(std::span<const PosedMesh> meshes, const Camera& camera,
                               const SoftRasterSettings& settings) {
  if (meshes.empty()) throw InputError("render_soft needs at least one mesh");
  if (!(settings.sigma > 0.0)) throw InputError("soft rasterizer sigma must be positive");
  camera.validate();

  std::vector<std::vector<Eigen::Vector3d>> storage;
  storage.reserve(meshes.size());
  std::vector<FaceLayer<double>> layers;
  for (const auto& pm : meshes) {
    if (pm.mesh == nullptr) throw InputError("render_soft: null mesh");
    storage.push_back(posed_vertices(*pm.mesh, pm.pose));
    layers.push_back({storage.back(), pm.mesh->faces()});
  }
  return rasterize_soft<double>(layers, SoftLayerCache{}, camera, settings);
}

}  // namespace hoi
