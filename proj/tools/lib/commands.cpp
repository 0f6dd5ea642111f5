#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fixture.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/obj_io.hpp"
#include "hoi/io/json_io.hpp"
#include "hoi/io/maps.hpp"
#include "hoi/render/hard_rasterizer.hpp"
#include "hoi/render/soft_rasterizer.hpp"
#include "hoi/scoring/metrics.hpp"
#include "hoi/scoring/rewards.hpp"

namespace hoi::tools {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineSettings ConfigSource::load() const {
  KeyValueConfig cfg = file ? KeyValueConfig::load(*file) : KeyValueConfig{};
  for (const auto& o : overrides) cfg.set(std::string_view(o));
  return settings_from_config(cfg);
}

namespace {

json pose_json(const Pose6DoF& p) { return json::parse(pose_to_json(p)); }

json losses_json(const LossBreakdown& b) {
  json j;
  for (LossTerm t : kAllLossTerms) j[loss_term_name(t)] = b.term(t);
  j["total"] = b.total;
  j["stage"] = b.stage;
  return j;
}

Camera camera_preset(const std::string& name) {
  if (name == "desk") return Camera::desk();
  if (name == "reference") return Camera::reference();
  throw InputError("unknown camera preset '" + name + "' (desk or reference)");
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

EstimateOutcome estimate_scene(const LoadedScene& scene, const PipelineSettings& settings,
                               std::uint64_t seed) {
  EstimateOutcome out;
  const SceneObjective objective(scene.inputs, settings.weights);
  for (const auto& plan : settings.schedule.stages) objective.require_stage(plan.stage);

  CoarseConfig coarse_cfg = settings.coarse;
  coarse_cfg.ransac.seed = seed;
  if (scene.inputs.human) coarse_cfg.anchor = scene.inputs.human->bounds().center();
  out.coarse = coarse_pose(scene.inputs.object, scene.target, scene.inputs.mask_object,
                           scene.inputs.camera, scene.extractor, coarse_cfg);
  if (out.coarse->diagnostics.failed) {
    out.exit_code = kCoarseFailure;
    out.message = "coarse stage failed: " + out.coarse->diagnostics.failure_reason;
    return out;
  }
  out.refined = refine_pose(out.coarse->pose, objective, settings.schedule);
  if (out.refined->diverged) {
    out.exit_code = kDiverged;
    out.message = "refinement diverged: " + out.refined->divergence_reason;
  }
  return out;
}

namespace {

int run_one_bundle(const fs::path& bundle_path, const fs::path& out_dir,
                   const PipelineSettings& base, std::uint64_t seed, std::ostream& log) {
  const SceneBundle bundle = read_bundle(bundle_path);
  PipelineSettings settings = base;
  if (bundle.lambda_object) {
    settings.weights.lambda_object = *bundle.lambda_object;
    settings.weights.validate();
  }
  const LoadedScene scene = load_scene(bundle, settings);
  const EstimateOutcome r = estimate_scene(scene, settings, seed);

  fs::create_directories(out_dir);
  const auto& d = r.coarse->diagnostics;
  json coarse{{"selected_view", d.selected_view},
              {"view_score", d.view_score},
              {"matches", d.matches},
              {"inliers", d.inliers},
              {"reprojection_error_px", d.reprojection_error},
              {"failed", d.failed},
              {"pose", pose_json(r.coarse->pose)}};
  if (d.failed) coarse["failure_reason"] = d.failure_reason;

  const Pose6DoF& final_pose = r.refined ? r.refined->pose : r.coarse->fallback_pose;
  json j = pose_json(final_pose);
  j["status"] = r.exit_code == kOk ? "ok" : r.exit_code == kCoarseFailure ? "coarse_failed"
                                                                         : "diverged";
  j["seed"] = seed;
  j["coarse_inliers"] = d.inliers;
  j["coarse"] = coarse;
  if (r.refined) {
    const SceneObjective objective(scene.inputs, settings.weights);
    const LossBreakdown fin =
        objective.evaluate(final_pose, settings.schedule.final_stage(), ContactGate::Hard);
    j["final_losses"] = losses_json(fin);
    j["initial_objective"] = r.refined->initial_objective;
    j["iterations"] = r.refined->trace.size();
    j["skipped_steps"] = r.refined->skipped_steps;
    j["diverged"] = r.refined->diverged;
    if (r.refined->diverged) j["divergence_reason"] = r.refined->divergence_reason;
    j["warnings"] = objective.warnings();
    std::ofstream trace(out_dir / "trace.csv", std::ios::binary);
    if (!trace) throw InputError("cannot write " + (out_dir / "trace.csv").string());
    write_trace_csv(trace, r.refined->trace);
  }
  write_text(out_dir / "pose.json", j.dump(1) + "\n");
  if (!r.message.empty()) log << bundle_path.string() << ": " << r.message << '\n';
  return r.exit_code;
}

}  // namespace

int cmd_estimate(const EstimateOptions& o, std::ostream& log) {
  return guarded(log, "estimate", [&] {
    if (o.bundles.empty()) throw InputError("no scene bundle given");
    if (o.jobs < 1) throw InputError("--jobs must be >= 1");
    const PipelineSettings settings = o.config.load();

    const std::size_t n = o.bundles.size();
    std::vector<int> codes(n, kOk);
    std::vector<std::string> logs(n);
    auto job = [&](std::size_t i) {
      const fs::path out_dir =
          n == 1 ? o.out
                 : o.out / (std::to_string(i) + "_" +
                            fs::absolute(o.bundles[i]).parent_path().filename().string());
      std::ostringstream local;
      codes[i] = guarded(local, "estimate", [&] {
        return run_one_bundle(o.bundles[i], out_dir, settings, o.seed, local);
      });
      logs[i] = local.str();
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), n);
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) job(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < n; i = next++) job(i);
        });
      }
      for (auto& t : pool) t.join();
    }
    int first = kOk;
    for (std::size_t i = 0; i < n; ++i) {
      log << logs[i];
      if (first == kOk) first = codes[i];
    }
    return first;
  });
}

int cmd_interpolate(const InterpolateOptions& o, std::ostream& log) {
  return guarded(log, "interpolate", [&] {
    const PipelineSettings settings = o.config.load();
    const HOISequence input = read_motion(o.input);
    if (input.frames.empty()) throw InputError("input motion has no frames");
    if (o.milestones && !o.timestamps.empty()) {
      throw InputError("give either --milestones or --timestamps, not both");
    }
    HOISequence milestones;
    if (!o.timestamps.empty()) {
      milestones.fps = input.fps;
      milestones.skeleton = input.skeleton;
      for (double t : o.timestamps) milestones.frames.push_back(sample_milestones(input, t));
    } else {
      const int k = o.milestones.value_or(
          std::min(settings.milestones, static_cast<int>(input.frames.size())));
      milestones = extract_keyframes(input, k);
    }
    if (o.keyframes_only) {
      write_motion(o.out, milestones);
      return static_cast<int>(kOk);
    }
    HOISequence dense = interpolate(milestones, o.fps.value_or(settings.fps));
    dense.keyframe_indices = milestones.keyframe_indices;
    write_motion(o.out, dense);
    return static_cast<int>(kOk);
  });
}

int cmd_score(const ScoreOptions& o, std::ostream& log) {
  return guarded(log, "score", [&] {
    const PipelineSettings settings = o.config.load();
    HOISequence sim = read_motion(o.sim);
    HOISequence ref = read_motion(o.ref);
    if (sim.skeleton != ref.skeleton) throw InputError("sim and ref skeletons differ");
    if (sim.frames.size() != ref.frames.size()) {
      throw InputError("sim has " + std::to_string(sim.frames.size()) + " frames, ref has " +
                       std::to_string(ref.frames.size()));
    }
    if (sim.frames.empty()) throw InputError("motions have no frames");
    std::optional<ContactLabels> labels;
    if (o.labels) {
      labels = parse_contact_labels(read_text(*o.labels));
      labels->validate(&sim.skeleton);
    }
    std::optional<TriangleMesh> object;
    if (o.object_mesh) object = read_obj(*o.object_mesh);
    fill_velocities(sim, false);
    fill_velocities(ref, false);

    const RewardConfig& cfg = settings.rewards;
    std::vector<std::size_t> hand_idx;
    for (const auto& name : settings.contact.hand_joints) {
      const int j = sim.joint_index(name);
      if (j < 0) throw InputError("hand joint '" + name + "' is not in the skeleton");
      hand_idx.push_back(static_cast<std::size_t>(j));
    }

    json warnings = json::array();
    bool action_missing = false;
    std::ostringstream csv;
    csv << "frame,t,R_body,R_obj,R_reg,R_imitate,R_contact,IV_cm3\n";
    double sum_body = 0, sum_obj = 0, sum_reg = 0, sum_imit = 0, sum_contact = 0, sum_iv = 0;
    const std::size_t n = sim.frames.size();
    for (std::size_t t = 0; t < n; ++t) {
      const HOIFrame& s = sim.frames[t];
      const HOIFrame& r = ref.frames[t];
      const double body = body_reward(s, r, sim.skeleton, cfg);
      const double obj = object_reward(s.object, r.object, cfg);
      HOIFrame s_act = s;
      if (!s_act.action) {
        s_act.action = Eigen::VectorXd::Zero(0);
        action_missing = true;
      }
      // The first frame is its own predecessor.
      const double reg = regularization_reward(s_act, sim.frames[t == 0 ? 0 : t - 1], cfg);
      const double imit = imitation_reward(body, obj, reg);
      std::string contact_cell, iv_cell;
      if (labels) {
        const double c = contact_reward(s.forces, sim.skeleton, *labels, cfg);
        sum_contact += c;
        contact_cell = csv_number(c);
      }
      if (object) {
        const TriangleMesh posed = object->transformed(s.object.pose);
        std::vector<TriangleMesh> hands;
        for (std::size_t j : hand_idx) {
          if (s.joint_positions.size() != sim.skeleton.size()) {
            throw InputError("frame " + std::to_string(t) + " has no joint positions");
          }
          hands.push_back(make_icosphere(s.joint_positions[j], settings.hand_radius, 2));
        }
        double iv = 0.0;
        for (const auto& h : hands) iv += intersection_volume(h, posed, settings.iv_pitch);
        iv *= 1e6;  // m^3 -> cm^3
        sum_iv += iv;
        iv_cell = csv_number(iv);
      }
      sum_body += body;
      sum_obj += obj;
      sum_reg += reg;
      sum_imit += imit;
      csv << t << ',' << csv_number(s.time) << ',' << csv_number(body) << ',' << csv_number(obj)
          << ',' << csv_number(reg) << ',' << csv_number(imit) << ',' << contact_cell << ','
          << iv_cell << '\n';
    }
    if (action_missing) warnings.push_back("sim frames without an action vector scored as zero action");

    const double dn = static_cast<double>(n);
    json summary{{"frames", n},
                 {"R_body", sum_body / dn},
                 {"R_obj", sum_obj / dn},
                 {"R_reg", sum_reg / dn},
                 {"R_imitate", sum_imit / dn},
                 {"R_contact", labels ? json(sum_contact / dn) : json(nullptr)},
                 {"FS_m_per_frame", foot_sliding(sim, settings.foot_sliding)},
                 {"IV_cm3", object ? json(sum_iv / dn) : json(nullptr)},
                 {"CP_percent", object ? json(contact_percentage(sim, *object, settings.contact))
                                       : json(nullptr)},
                 {"warnings", warnings}};
    write_text(o.out_csv, csv.str());
    write_text(o.out_json, summary.dump(1) + "\n");
    return static_cast<int>(kOk);
  });
}

int cmd_render_debug(const RenderDebugOptions& o, std::ostream& log) {
  return guarded(log, "render-debug", [&] {
    if (o.meshes.empty()) throw InputError("no mesh given");
    if (!o.poses.empty() && o.poses.size() != o.meshes.size()) {
      throw InputError("give one --pose per --mesh, or none");
    }
    const Camera camera = camera_preset(o.camera);
    std::vector<TriangleMesh> meshes;
    std::vector<Pose6DoF> poses;
    for (std::size_t i = 0; i < o.meshes.size(); ++i) {
      meshes.push_back(read_obj(o.meshes[i]));
      poses.push_back(o.poses.empty() ? Pose6DoF::identity() : read_pose(o.poses[i]));
    }
    std::vector<PosedMesh> posed;
    for (std::size_t i = 0; i < meshes.size(); ++i) posed.push_back({&meshes[i], poses[i]});
    SoftRasterSettings rs;
    if (o.sigma) rs.sigma = *o.sigma;
    const auto soft = render_soft(posed, camera, rs);
    const std::string prefix = o.out_prefix.string();
    write_scalar_map(prefix + "_sil.smap", soft.silhouette, MapKind::Silhouette);
    write_scalar_map(prefix + "_depth.dmap", soft.depth, MapKind::Depth);
    write_pgm(prefix + "_sil.pgm", soft.silhouette);
    if (o.hard) {
      Image<double> sil(camera.width, camera.height, 0.0), depth(camera.width, camera.height, 0.0);
      for (std::size_t i = 0; i < meshes.size(); ++i) {
        const GBuffer g = rasterize_hard(meshes[i], poses[i], camera);
        for (std::size_t p = 0; p < sil.size(); ++p) {
          if (g.silhouette[p] > 0.5 && (depth[p] == 0.0 || g.depth[p] < depth[p])) {
            sil[p] = 1.0;
            depth[p] = g.depth[p];
          }
        }
      }
      write_scalar_map(prefix + "_hard_sil.smap", sil, MapKind::Silhouette);
      write_scalar_map(prefix + "_hard_depth.dmap", depth, MapKind::Depth);
    }
    std::size_t covered = 0;
    for (std::size_t p = 0; p < soft.silhouette.size(); ++p) covered += soft.silhouette[p] > 0.5;
    log << "render-debug: " << covered << " pixels with silhouette > 0.5\n";
    return static_cast<int>(kOk);
  });
}

int cmd_make_fixture(const MakeFixtureOptions& o, std::ostream& log) {
  return guarded(log, "make-fixture", [&] {
    FixtureOptions fo;
    fo.seed = o.seed;
    fo.camera = camera_preset(o.camera);
    fo.with_human = o.with_human;
    fo.with_depth = o.with_depth;
    fo.with_contact = o.with_contact && o.with_human;
    const Fixture fx = make_fixture(o.out, fo);
    log << "make-fixture: wrote " << fx.bundle_path.string() << " (planted view "
        << fx.planted_view << ")\n";
    return static_cast<int>(kOk);
  });
}

}  // namespace hoi::tools
