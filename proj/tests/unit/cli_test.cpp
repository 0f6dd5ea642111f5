#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "doctest.h"
#include "fixture.hpp"
#include "hoi/geometry/obj_io.hpp"
#include "hoi/io/json_io.hpp"
#include "hoi/io/maps.hpp"

using namespace hoi;
using namespace hoi::tools;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("estimate maps input problems to exit codes") {
  const fs::path dir = fresh_dir("hoi_cli_codes");
  std::ostringstream log;
  EstimateOptions o;
  o.out = dir / "out";
  o.bundles = {dir / "missing.json"};
  CHECK(cmd_estimate(o, log) == kInputError);
  write_text(dir / "broken.json", "{ not json");
  o.bundles = {dir / "broken.json"};
  CHECK(cmd_estimate(o, log) == kFormatError);
  o.bundles.clear();
  CHECK(cmd_estimate(o, log) == kInputError);
  o.bundles = {dir / "broken.json"};
  o.config.overrides = {"w_sil=-1"};
  CHECK(cmd_estimate(o, log) == kInputError);
  fs::remove_all(dir);
}

TEST_CASE("too few correspondences is a coarse failure") {
  const fs::path dir = fresh_dir("hoi_cli_coarse");
  std::ostringstream log;
  MakeFixtureOptions mf;
  mf.out = dir / "scene";
  REQUIRE(cmd_make_fixture(mf, log) == kOk);
  SceneBundle b = read_bundle(mf.out / "bundle.json");
  // Keep three valid target pixels on the object.
  const Image<double> mask = read_mask(b.resolve(b.mask_object));
  Image<double> valid(mask.width(), mask.height(), 0.0);
  int kept = 0;
  for (std::size_t i = 0; i < mask.size() && kept < 3; ++i) {
    if (mask[i] > 0.5) {
      valid[i] = 1.0;
      ++kept;
    }
  }
  write_pgm(mf.out / "sparse_valid.pgm", valid);
  b.target_valid = "sparse_valid.pgm";
  write_text(mf.out / "sparse.json", bundle_to_json(b));
  EstimateOptions o;
  o.bundles = {mf.out / "sparse.json"};
  o.out = dir / "out";
  CHECK(cmd_estimate(o, log) == kCoarseFailure);
  const auto pose = nlohmann::json::parse(read_text(dir / "out" / "pose.json"));
  CHECK(pose["status"] == "coarse_failed");
  fs::remove_all(dir);
}

TEST_CASE("interpolate and score a demo motion") {
  const fs::path dir = fresh_dir("hoi_cli_motion");
  std::ostringstream log;
  HOISequence ref = demo_motion(31, 30.0);
  for (auto& f : ref.frames) f.forces.assign(ref.skeleton.size(), Eigen::Vector3d::Zero());
  write_motion(dir / "ref.json", ref);
  write_obj(dir / "object.obj", fixture_object());

  InterpolateOptions io;
  io.input = dir / "ref.json";
  io.out = dir / "dense.json";
  io.milestones = 4;
  REQUIRE(cmd_interpolate(io, log) == kOk);
  const HOISequence dense = read_motion(dir / "dense.json");
  CHECK(dense.frames.size() == 31);
  CHECK(dense.keyframe_indices == std::vector<int>{0, 10, 20, 30});

  write_text(dir / "labels.json", R"({"contact": [], "separate": ["L_Wrist", "R_Wrist"]})");
  ScoreOptions so;
  so.sim = dir / "ref.json";
  so.ref = dir / "ref.json";
  so.labels = dir / "labels.json";
  so.object_mesh = dir / "object.obj";
  so.out_csv = dir / "score.csv";
  so.out_json = dir / "score.json";
  REQUIRE_MESSAGE(cmd_score(so, log) == kOk, log.str());
  const auto summary = nlohmann::json::parse(read_text(so.out_json));
  CHECK(summary["R_imitate"].get<double>() == 1.0);
  CHECK(summary["R_contact"].get<double>() == 1.0);

  io.milestones = 40;
  CHECK(cmd_interpolate(io, log) == kInputError);
  write_text(dir / "bad.json", "[1, 2");
  so.sim = dir / "bad.json";
  CHECK(cmd_score(so, log) == kFormatError);
  fs::remove_all(dir);
}
