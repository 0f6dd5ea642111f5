#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hoi/io/config.hpp"

namespace {

void add_config(CLI::App* cmd, hoi::tools::ConfigSource& source) {
  cmd->add_option("--config", source.file, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--set", source.overrides, "override a config key (key=value), repeatable");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hoi::tools;
  CLI::App app{"Object pose estimation, motion interpolation and scoring for human-object interaction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hoictl 0.1.0");

  EstimateOptions est;
  auto* c_est = app.add_subcommand("estimate", "coarse + staged pose refinement of scene bundles");
  c_est->add_option("bundles", est.bundles, "scene bundle JSON files")->required();
  c_est->add_option("--out", est.out, "output directory")->required();
  c_est->add_option("--seed", est.seed, "RANSAC seed");
  c_est->add_option("--jobs", est.jobs, "parallel bundles")->check(CLI::PositiveNumber);
  add_config(c_est, est.config);

  InterpolateOptions interp;
  auto* c_int = app.add_subcommand("interpolate", "keyframes to dense motion");
  c_int->add_option("input", interp.input, "motion JSON")->required()->check(CLI::ExistingFile);
  c_int->add_option("--out", interp.out, "output motion JSON")->required();
  c_int->add_option("--milestones,-k", interp.milestones, "uniform keyframe count");
  c_int->add_option("--timestamps", interp.timestamps, "milestone times (seconds)")->delimiter(',');
  c_int->add_option("--fps", interp.fps, "output frame rate");
  c_int->add_flag("--keyframes-only", interp.keyframes_only, "write the milestones only");
  add_config(c_int, interp.config);

  ScoreOptions score;
  auto* c_sc = app.add_subcommand("score", "tracking rewards and motion metrics");
  c_sc->add_option("--sim", score.sim, "simulated motion JSON")->required()->check(CLI::ExistingFile);
  c_sc->add_option("--ref", score.ref, "reference motion JSON")->required()->check(CLI::ExistingFile);
  c_sc->add_option("--labels", score.labels, "contact labels")->check(CLI::ExistingFile);
  c_sc->add_option("--object", score.object_mesh, "object mesh (OBJ) for IV and CP")
      ->check(CLI::ExistingFile);
  c_sc->add_option("--csv", score.out_csv, "per-frame CSV")->required();
  c_sc->add_option("--summary", score.out_json, "summary JSON")->required();
  add_config(c_sc, score.config);

  RenderDebugOptions rd;
  auto* c_rd = app.add_subcommand("render-debug", "dump soft silhouette and depth maps");
  c_rd->add_option("--mesh", rd.meshes, "OBJ mesh, repeatable")->check(CLI::ExistingFile);
  c_rd->add_option("--pose", rd.poses, "pose JSON per mesh")->check(CLI::ExistingFile);
  c_rd->add_option("--camera", rd.camera, "desk or reference");
  c_rd->add_option("--sigma", rd.sigma, "edge softness in pixels");
  c_rd->add_option("--out", rd.out_prefix, "output path prefix")->required();
  c_rd->add_flag("--hard", rd.hard, "also write z-buffered maps");

  MakeFixtureOptions mf;
  auto* c_mf = app.add_subcommand("make-fixture", "write a planted-pose synthetic scene");
  c_mf->add_option("--out", mf.out, "output directory")->required();
  c_mf->add_option("--seed", mf.seed, "scene seed");
  c_mf->add_option("--camera", mf.camera, "desk or reference");
  bool no_human = false, no_depth = false, no_contact = false;
  c_mf->add_flag("--no-human", no_human);
  c_mf->add_flag("--no-depth", no_depth);
  c_mf->add_flag("--no-contact", no_contact);

  auto* c_keys = app.add_subcommand("config-keys", "print every config key with its default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (*c_est) return cmd_estimate(est, std::cerr);
  if (*c_int) return cmd_interpolate(interp, std::cerr);
  if (*c_sc) return cmd_score(score, std::cerr);
  if (*c_rd) return cmd_render_debug(rd, std::cerr);
  if (*c_mf) {
    mf.with_human = !no_human;
    mf.with_depth = !no_depth;
    mf.with_contact = !no_contact;
    return cmd_make_fixture(mf, std::cerr);
  }
  if (*c_keys) {
    std::cout << hoi::dump_settings(hoi::PipelineSettings{});
    return kOk;
  }
  return kInputError;
}
