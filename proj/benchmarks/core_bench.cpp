#include <filesystem>
#include <random>

#include <benchmark/benchmark.h>

#include "fixture.hpp"
#include "hoi/correspondence/matching.hpp"
#include "hoi/correspondence/pnp.hpp"
#include "hoi/correspondence/ransac.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/io/bundle.hpp"
#include "hoi/io/config.hpp"
#include "hoi/losses/total_loss.hpp"
#include "hoi/render/hard_rasterizer.hpp"
#include "hoi/scoring/metrics.hpp"
#include "planted.hpp"

using namespace hoi;

namespace {

// Built once; the fixture writes a few megabytes to the temp directory.
struct Scene {
  tools::Fixture fx;
  PipelineSettings settings;
  LoadedScene loaded;
  SceneObjective objective;

  Scene()
      : fx(tools::make_fixture(std::filesystem::temp_directory_path() / "hoi_bench_scene", {})),
        loaded(load_scene(fx.bundle, settings)),
        objective(loaded.inputs, settings.weights) {}
};

const Scene& scene() {
  static const Scene s;
  return s;
}

void BM_HardRaster(benchmark::State& state) {
  const Scene& s = scene();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rasterize_hard(s.loaded.inputs.object, s.fx.truth, s.loaded.inputs.camera));
  }
}
BENCHMARK(BM_HardRaster)->Unit(benchmark::kMillisecond);

void BM_ObjectiveValue(benchmark::State& state) {
  const Scene& s = scene();
  const int stage = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(s.objective.evaluate(s.fx.truth, stage));
}
BENCHMARK(BM_ObjectiveValue)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ObjectiveGradient(benchmark::State& state) {
  const Scene& s = scene();
  const int stage = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.objective.evaluate_with_gradient(s.fx.truth, stage));
  }
}
BENCHMARK(BM_ObjectiveGradient)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PnP(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Camera cam = Camera::desk();
  const Pose6DoF truth = testing::random_camera_pose(rng);
  const auto corrs =
      testing::planted_correspondences(rng, truth, cam, static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(solve_pnp(corrs, cam));
}
BENCHMARK(BM_PnP)->Arg(8)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Ransac(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto pm =
      testing::planted_homography_matches(rng, static_cast<int>(state.range(0)), 0.3);
  RansacOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(ransac_homography_filter(pm.matches, opts));
}
BENCHMARK(BM_Ransac)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MutualMatch(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<float> n(0.0f, 1.0f);
  FeatureMap a(side, side, 16), b(side, side, 16);
  for (float& v : a.data()) v = n(rng);
  for (float& v : b.data()) v = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(bidirectional_match(a, b, 500));
}
BENCHMARK(BM_MutualMatch)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_IntersectionVolume(benchmark::State& state) {
  const TriangleMesh a = make_box({0, 0, 0}, {0.5, 0.5, 0.5});
  const TriangleMesh b = make_box({0.5, 0, 0}, {0.5, 0.5, 0.5});
  const double pitch = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(intersection_volume(a, b, pitch));
}
BENCHMARK(BM_IntersectionVolume)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
