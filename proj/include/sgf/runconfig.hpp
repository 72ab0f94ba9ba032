// Experiment-runner configuration: figure presets, flat key-value config
// files, command-line overrides, and the CSV/manifest-producing executor.

#ifndef SGF_RUNCONFIG_HPP
#define SGF_RUNCONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgf/montecarlo.hpp"
#include "sgf/scenario.hpp"
#include "sgf/schemes.hpp"

namespace sgf {

enum class RunMode { mc, analytic, both, high_snr, oracle };

struct RunConfig {
  std::string preset = "custom";
  RunMode mode = RunMode::both;
  std::uint64_t trials = 1'000'000;
  bool trials_from_user = false;  // disables the low-outage trial bump
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "results";

  ScenarioParams scenario;
  std::vector<double> snr_db;
  std::vector<int> K_sweep;                            // empty = scenario.K
  std::vector<std::pair<double, double>> rate_pairs;   // empty = scenario rates
  std::vector<double> alpha_sweep;                     // empty = scenario.alpha
  std::vector<SchemeId> schemes;
  std::optional<double> pin_pb_db;  // pin P_B while P_F = P_m sweeps
  std::optional<FixedGeometryOverride> geometry;
  std::string metric = "outage";  // outage | admission | ergodic_rate

  // Grid orders (all complexity-accuracy knobs).
  int quad_order = 10;
};

// Parses command-line style arguments (without argv[0]):
//   run --preset fig6 --mode both --trials 1000000 --seed 42 --workers 8
//       --out results/ [--config file] [--set key=value ...]
// Precedence: defaults < preset < config file < --set < dedicated flags.
// Throws std::invalid_argument / CLI11 errors with descriptive messages.
RunConfig parse_config(const std::vector<std::string>& args);

// Applies one dotted config key (e.g. "scenario.K = 4"). Unknown keys throw.
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

// Expands a preset name into cfg. Throws on unknown preset.
void apply_preset(RunConfig& cfg, const std::string& preset);

// Runs the configured experiment, writing <out>/<preset>.csv and
// <out>/manifest.json. Returns a process exit status (0 = success).
// CSV schema (stable):
//   preset,scheme,mode,snr_db,K,R_B,R_F,alpha,metric,user_index,value,
//   ci_low,ci_high,trials
// with empty user_index for non-admission metrics and empty CI/trials for
// analytic rows. Reruns with identical config and seed are byte-identical.
int execute(const RunConfig& cfg);

std::optional<SchemeId> scheme_from_name(std::string_view name);
std::string_view run_mode_name(RunMode mode);

}  // namespace sgf

#endif  // SGF_RUNCONFIG_HPP
