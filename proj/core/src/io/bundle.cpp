#include "hoi/io/bundle.hpp"

#include <json.hpp>

#include "hoi/error.hpp"
#include "hoi/geometry/obj_io.hpp"
#include "hoi/io/json_io.hpp"
#include "hoi/io/maps.hpp"

namespace hoi {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path SceneBundle::resolve(const fs::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

namespace {

Camera camera_from_json(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "desk") return Camera::desk();
    if (name == "reference") return Camera::reference();
    throw FormatError("unknown camera preset '" + name + "'");
  }
  if (!j.is_object()) throw FormatError("camera must be a preset name or an object");
  Camera c;
  try {
    c.focal = j.at("focal").get<double>();
    const auto pp = j.at("principal").get<std::vector<double>>();
    if (pp.size() != 2) throw FormatError("camera principal must have two entries");
    c.principal = {pp[0], pp[1]};
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("camera: ") + e.what());
  }
  c.validate();
  return c;
}

json camera_to_json(const Camera& c) {
  return json{{"focal", c.focal},
              {"principal", {c.principal.x(), c.principal.y()}},
              {"width", c.width},
              {"height", c.height}};
}

std::optional<fs::path> opt_path(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw FormatError(std::string("bundle '") + key + "' must be a path");
  return fs::path(j.at(key).get<std::string>());
}

fs::path req_path(const json& j, const char* key) {
  auto p = opt_path(j, key);
  if (!p) throw FormatError(std::string("bundle is missing '") + key + "'");
  return *p;
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::is_regular_file(p)) {
    throw InputError(std::string(what) + " file not found: " + p.string());
  }
}

}  // namespace

SceneBundle bundle_from_json(std::string_view text, const fs::path& base_dir) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw FormatError("scene bundle is not a JSON object");
  SceneBundle b;
  b.base_dir = base_dir;
  try {
    b.camera = j.contains("camera") ? camera_from_json(j.at("camera")) : Camera::desk();
    b.object_mesh = req_path(j, "object_mesh");
    b.human_mesh = opt_path(j, "human_mesh");
    b.target_features = req_path(j, "target_features");
    b.target_valid = opt_path(j, "target_valid");
    b.mask_human_object = req_path(j, "mask_human_object");
    b.mask_object = req_path(j, "mask_object");
    b.depth = opt_path(j, "depth");
    b.contact = opt_path(j, "contact");
    if (j.contains("lambda_object")) b.lambda_object = j.at("lambda_object").get<double>();
    if (j.contains("human_depth")) b.human_depth = j.at("human_depth").get<double>();
    if (j.contains("view_features")) {
      const json& v = j.at("view_features");
      ViewFeatureSource& s = b.view_features;
      s.kind = v.value("kind", std::string("projection"));
      if (s.kind == "projection") {
        s.channels = v.value("channels", s.channels);
        s.seed = v.value("seed", s.seed);
        s.extent = v.value("extent", s.extent);
      } else if (s.kind == "precomputed") {
        for (const auto& m : v.at("maps")) s.maps.emplace_back(m.get<std::string>());
        if (v.contains("valid")) {
          for (const auto& m : v.at("valid")) {
            s.valid.push_back(m.is_null() ? std::nullopt
                                          : std::optional<fs::path>(m.get<std::string>()));
          }
        }
        s.valid.resize(s.maps.size());
      } else {
        throw FormatError("view_features kind must be 'projection' or 'precomputed'");
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("scene bundle: ") + e.what());
  }
  return b;
}

SceneBundle read_bundle(const fs::path& path) {
  return bundle_from_json(read_text(path), path.parent_path());
}

std::string bundle_to_json(const SceneBundle& b) {
  json j{{"camera", camera_to_json(b.camera)},
         {"object_mesh", b.object_mesh.generic_string()},
         {"target_features", b.target_features.generic_string()},
         {"mask_human_object", b.mask_human_object.generic_string()},
         {"mask_object", b.mask_object.generic_string()}};
  if (b.human_mesh) j["human_mesh"] = b.human_mesh->generic_string();
  if (b.target_valid) j["target_valid"] = b.target_valid->generic_string();
  if (b.depth) j["depth"] = b.depth->generic_string();
  if (b.contact) j["contact"] = b.contact->generic_string();
  if (b.lambda_object) j["lambda_object"] = *b.lambda_object;
  if (b.human_depth) j["human_depth"] = *b.human_depth;
  const ViewFeatureSource& s = b.view_features;
  if (s.kind == "projection") {
    j["view_features"] = {{"kind", s.kind}, {"channels", s.channels}, {"seed", s.seed},
                          {"extent", s.extent}};
  } else {
    json maps = json::array(), valid = json::array();
    for (std::size_t i = 0; i < s.maps.size(); ++i) {
      maps.push_back(s.maps[i].generic_string());
      valid.push_back(i < s.valid.size() && s.valid[i] ? json(s.valid[i]->generic_string())
                                                       : json(nullptr));
    }
    j["view_features"] = {{"kind", s.kind}, {"maps", maps}, {"valid", valid}};
  }
  return j.dump(1) + "\n";
}

LoadedScene load_scene(const SceneBundle& b, const PipelineSettings& settings) {
  const fs::path object_path = b.resolve(b.object_mesh);
  require_file(object_path, "object mesh");
  require_file(b.resolve(b.target_features), "target feature map");
  require_file(b.resolve(b.mask_human_object), "human-object mask");
  require_file(b.resolve(b.mask_object), "object mask");
  if (b.human_mesh) require_file(b.resolve(*b.human_mesh), "human mesh");
  if (b.depth) require_file(b.resolve(*b.depth), "depth map");
  if (b.contact) require_file(b.resolve(*b.contact), "contact spec");
  if (b.target_valid) require_file(b.resolve(*b.target_valid), "target validity mask");

  SceneInputs in;
  in.camera = b.camera;
  in.raster = settings.raster;
  in.object = read_obj(object_path);
  if (b.human_mesh) in.human = read_obj(b.resolve(*b.human_mesh));
  in.mask_human_object = read_mask(b.resolve(b.mask_human_object));
  in.mask_object = read_mask(b.resolve(b.mask_object));
  if (b.depth) in.depth = read_scalar_map(b.resolve(*b.depth), MapKind::Depth);
  if (b.contact) {
    if (!in.human) throw InputError("a contact spec needs a human mesh");
    in.contact = contact_spec_from_json(read_text(b.resolve(*b.contact)), *in.human);
  }
  in.human_depth = b.human_depth;

  std::optional<fs::path> valid;
  if (b.target_valid) valid = b.resolve(*b.target_valid);
  FeatureMap target = read_feature_map(b.resolve(b.target_features), valid);
  if (target.width() != b.camera.width || target.height() != b.camera.height) {
    throw InputError("target feature map size does not match the camera");
  }

  FeatureExtractor extractor;
  const ViewFeatureSource& s = b.view_features;
  if (s.kind == "projection") {
    if (s.channels != target.channels()) {
      throw InputError("view feature channels differ from the target feature map");
    }
    extractor = ProjectionFeatureExtractor(s.channels, s.seed, s.extent);
  } else {
    std::vector<FeatureMap> maps;
    for (std::size_t i = 0; i < s.maps.size(); ++i) {
      require_file(b.resolve(s.maps[i]), "view feature map");
      std::optional<fs::path> v;
      if (s.valid[i]) v = b.resolve(*s.valid[i]);
      maps.push_back(read_feature_map(b.resolve(s.maps[i]), v));
      if (maps.back().channels() != target.channels()) {
        throw InputError("view feature channels differ from the target feature map");
      }
    }
    extractor = [maps = std::move(maps)](const GBuffer&, int index) {
      if (index < 0 || static_cast<std::size_t>(index) >= maps.size()) {
        throw InputError("no precomputed features for view " + std::to_string(index));
      }
      return maps[static_cast<std::size_t>(index)];
    };
  }

  LoadedScene scene{std::move(in), std::move(target), std::move(extractor)};
  return scene;
}

}  // namespace hoi
