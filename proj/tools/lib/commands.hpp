#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hoi/correspondence/coarse_pose.hpp"
#include "hoi/io/bundle.hpp"
#include "hoi/io/config.hpp"
#include "hoi/optim/refine.hpp"

namespace hoi::tools {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kInputError = 2,
  kCoarseFailure = 3,
  kDiverged = 4,
  kFormatError = 5,
};

/// Config file plus --set overrides.
struct ConfigSource {
  std::optional<std::filesystem::path> file;
  std::vector<std::string> overrides;

  PipelineSettings load() const;
};

struct EstimateOptions {
  std::vector<std::filesystem::path> bundles;
  std::filesystem::path out;
  ConfigSource config;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct EstimateOutcome {
  int exit_code = kOk;
  std::string message;
  std::optional<CoarseResult> coarse;
  std::optional<RefineResult> refined;
};

/// Coarse stage then staged refinement of one loaded scene. Never throws for
/// coarse failure or divergence; those are reported through exit_code.
EstimateOutcome estimate_scene(const LoadedScene& scene, const PipelineSettings& settings,
                               std::uint64_t seed);

/// Runs every bundle (in parallel with jobs > 1) and writes pose.json and
/// trace.csv per bundle: into `out` for a single bundle, else into
/// out/<index>_<bundle dir name>. Returns the first nonzero exit code.
int cmd_estimate(const EstimateOptions& options, std::ostream& log);

struct InterpolateOptions {
  std::filesystem::path input;
  std::filesystem::path out;
  std::optional<int> milestones;
  std::vector<double> timestamps;
  std::optional<double> fps;
  bool keyframes_only = false;
  ConfigSource config;
};
int cmd_interpolate(const InterpolateOptions& options, std::ostream& log);

struct ScoreOptions {
  std::filesystem::path sim;
  std::filesystem::path ref;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> object_mesh;
  std::filesystem::path out_csv;
  std::filesystem::path out_json;
  ConfigSource config;
};
int cmd_score(const ScoreOptions& options, std::ostream& log);

struct RenderDebugOptions {
  std::vector<std::filesystem::path> meshes;
  std::vector<std::filesystem::path> poses;
  std::string camera = "desk";
  std::optional<double> sigma;
  std::filesystem::path out_prefix;
  bool hard = false;
};
int cmd_render_debug(const RenderDebugOptions& options, std::ostream& log);

struct MakeFixtureOptions {
  std::filesystem::path out;
  std::uint64_t seed = 0;
  bool with_human = true;
  bool with_depth = true;
  bool with_contact = true;
  std::string camera = "desk";
};
int cmd_make_fixture(const MakeFixtureOptions& options, std::ostream& log);

/// Maps the library's exceptions to exit codes, printing the message.
template <class F>
int guarded(std::ostream& err, const char* command, F&& body);

}  // namespace hoi::tools

#include "commands_inl.hpp"
