#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixture.hpp"
#include "hoi/error.hpp"
#include "hoi/io/bundle.hpp"
#include "hoi/io/config.hpp"
#include "hoi/io/json_io.hpp"
#include "hoi/io/maps.hpp"

using namespace hoi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("scalar maps round trip through f32") {
  TempDir dir("hoi_io_maps");
  Image<double> img(5, 3);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = 0.25 * double(i);
  write_scalar_map(dir.path / "d.dmap", img, MapKind::Depth);
  const Image<double> back = read_scalar_map(dir.path / "d.dmap", MapKind::Depth);
  REQUIRE(back.same_shape(img));
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(back[i] == img[i]);
  CHECK_THROWS_AS(read_scalar_map(dir.path / "d.dmap", MapKind::Silhouette), FormatError);
  // Header: magic, version, width, height.
  std::ifstream in(dir.path / "d.dmap", std::ios::binary);
  char magic[4];
  std::uint32_t header[3];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(header), sizeof header);
  CHECK(std::string(magic, 4) == "DMAP");
  CHECK(header[0] == kMapFormatVersion);
  CHECK(header[1] == 5);
  CHECK(header[2] == 3);
}

TEST_CASE("truncated and garbage maps are format errors") {
  TempDir dir("hoi_io_bad");
  write_text(dir.path / "junk.dmap", "XXXXnot a map");
  CHECK_THROWS_AS(read_scalar_map(dir.path / "junk.dmap", MapKind::Depth), FormatError);
  Image<double> img(4, 4, 1.0);
  write_scalar_map(dir.path / "t.smap", img, MapKind::Silhouette);
  fs::resize_file(dir.path / "t.smap", 20);
  CHECK_THROWS_AS(read_scalar_map(dir.path / "t.smap", MapKind::Silhouette), FormatError);
  CHECK_THROWS_AS(read_scalar_map(dir.path / "missing.dmap", MapKind::Depth), InputError);
}

TEST_CASE("PGM masks round trip") {
  TempDir dir("hoi_io_pgm");
  Image<double> m(7, 2, 0.0);
  m(3, 1) = 1.0;
  m(0, 0) = 1.0;
  write_pgm(dir.path / "m.pgm", m);
  const Image<double> back = read_mask(dir.path / "m.pgm");
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(back[i] == m[i]);
  write_scalar_map(dir.path / "m.smap", m, MapKind::Silhouette);
  CHECK(read_mask(dir.path / "m.smap")(3, 1) == 1.0);
}

TEST_CASE("feature maps round trip with validity") {
  TempDir dir("hoi_io_fmap");
  FeatureMap f(3, 2, 4);
  for (std::size_t i = 0; i < f.data().size(); ++i) f.data()[i] = 0.5f * float(i);
  f.set_valid_mask(Mask(3, 2, 0));
  f.set_valid(1, 1, true);
  f.set_valid(2, 0, true);
  write_feature_map(dir.path / "f.fmap", f, dir.path / "f.pgm");
  const FeatureMap back = read_feature_map(dir.path / "f.fmap", dir.path / "f.pgm");
  CHECK(back.data() == f.data());
  CHECK(back.valid_count() == 2);
  CHECK(back.valid(1, 1));
  CHECK(read_feature_map(dir.path / "f.fmap").valid_count() == 6);
}

TEST_CASE("pose JSON round trips exactly") {
  const Pose6DoF p(Eigen::Quaterniond(0.1, 0.7, -0.3, 0.2).normalized(),
                   {0.123456789012345, -2.5, 3.0}, 1.25);
  const Pose6DoF back = pose_from_json(pose_to_json(p));
  CHECK(back.rotation().coeffs() == p.rotation().coeffs());
  CHECK(back.translation() == p.translation());
  CHECK(back.scale() == p.scale());
  CHECK_THROWS_AS(pose_from_json("{\"rotation\": [1, 0, 0]}"), FormatError);
  CHECK_THROWS_AS(pose_from_json("not json"), FormatError);
}

TEST_CASE("motion JSON round trips exactly") {
  HOISequence s = tools::demo_motion(4, 30.0);
  fill_velocities(s);
  s.frames[2].action = Eigen::VectorXd::LinSpaced(3, 0.1, 0.3);
  s.frames[1].forces.assign(s.skeleton.size(), Eigen::Vector3d(0.1, 0.2, 0.3));
  const HOISequence back = motion_from_json(motion_to_json(s));
  CHECK(back.skeleton == s.skeleton);
  REQUIRE(back.frames.size() == s.frames.size());
  CHECK(back.frames[2].action->isApprox(*s.frames[2].action, 0.0));
  CHECK(back.frames[1].forces == s.frames[1].forces);
  CHECK(back.frames[3].joint_positions == s.frames[3].joint_positions);
  CHECK(back.frames[3].object.pose.translation() == s.frames[3].object.pose.translation());
  CHECK(motion_to_json(back) == motion_to_json(s));
  CHECK_THROWS_AS(motion_from_json("{\"fps\": 30}"), FormatError);
}

TEST_CASE("bare force magnitudes are read") {
  const char* text = R"({"fps": 30, "skeleton": ["A", "B"], "frames": [
    {"t": 0, "root_pos": [0,0,0], "root_rot": [1,0,0,0],
     "object": {"rot": [1,0,0,0], "pos": [0,0,0]}, "forces": [2.5, 0]}]})";
  const HOISequence s = motion_from_json(text);
  CHECK(s.frames[0].forces[0].norm() == 2.5);
  CHECK(s.frames[0].forces[1].norm() == 0.0);
}

TEST_CASE("key-value config parsing and overrides") {
  KeyValueConfig c = KeyValueConfig::parse("# comment\nw_sil = 50\n\nlr=0.01 # trailing\n");
  c.set("lambda_contact=-2.5");
  const PipelineSettings s = settings_from_config(c);
  CHECK(s.weights.w_sil == 50.0);
  CHECK(s.schedule.adam.lr == 0.01);
  CHECK(s.rewards.lambda_contact == -2.5);
  CHECK(s.human_root_depth == 2.5);
  CHECK_THROWS_AS(KeyValueConfig::parse("novalue\n"), FormatError);
  CHECK_THROWS_AS(settings_from_config(KeyValueConfig::parse("w_sill = 1")), InputError);
  CHECK_THROWS_AS(settings_from_config(KeyValueConfig::parse("w_sil = abc")), InputError);
  CHECK_THROWS_AS(settings_from_config(KeyValueConfig::parse("lambda_p = 1")), InputError);
  // Every key dumped back parses to the same settings.
  const std::string dumped = dump_settings(s);
  CHECK(dump_settings(settings_from_config(KeyValueConfig::parse(dumped))) == dumped);
  // Unset object overrides are omitted.
  for (const auto& key : known_config_keys()) {
    if (key.rfind("object_lambda_", 0) == 0) continue;
    CHECK(dumped.find(key + " = ") != std::string::npos);
  }
}

TEST_CASE("fixture bundle loads and round trips") {
  TempDir dir("hoi_io_bundle");
  tools::FixtureOptions opts;
  opts.seed = 1;
  const tools::Fixture fx = tools::make_fixture(dir.path, opts);
  const SceneBundle b = read_bundle(fx.bundle_path);
  const SceneBundle again = bundle_from_json(bundle_to_json(b), b.base_dir);
  CHECK(bundle_to_json(again) == bundle_to_json(b));
  const LoadedScene scene = load_scene(b, PipelineSettings{});
  CHECK(scene.inputs.human.has_value());
  CHECK(scene.inputs.depth.has_value());
  CHECK(scene.inputs.contact.has_value());
  CHECK(scene.inputs.mask_object.width() == 128);
  CHECK_THROWS_AS(bundle_from_json("{}", dir.path), FormatError);
  fs::remove(dir.path / b.mask_object);
  CHECK_THROWS_AS(load_scene(b, PipelineSettings{}), InputError);
}
