#include "sgf/runconfig.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty())
    throw std::invalid_argument("config key '" + key +
                                "': expected a number, got '" + v + "'");
  return d;
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  if (d < 0 || d != std::floor(d) || d > 1.8e19)
    throw std::invalid_argument("config key '" + key +
                                "': expected a nonnegative integer, got '" + v +
                                "'");
  return static_cast<std::uint64_t>(d);
}

// "0,5,10" or the range form "0:5:40" (first:step:last, inclusive).
std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_double(item, key));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::invalid_argument("config key '" + key +
                                  "': range needs first:step:last");
    const double first = parse_double(trim(item.substr(0, c1)), key);
    const double step = parse_double(trim(item.substr(c1 + 1, c2 - c1 - 1)), key);
    const double last = parse_double(trim(item.substr(c2 + 1)), key);
    if (step <= 0 || last < first)
      throw std::invalid_argument("config key '" + key +
                                  "': range must ascend with positive step");
    for (double x = first; x <= last + 1e-9 * step; x += step)
      out.push_back(x);
  }
  return out;
}

RunMode mode_from_name(const std::string& name) {
  if (name == "mc") return RunMode::mc;
  if (name == "analytic") return RunMode::analytic;
  if (name == "both") return RunMode::both;
  if (name == "high-snr") return RunMode::high_snr;
  if (name == "oracle") return RunMode::oracle;
  throw std::invalid_argument(
      "unknown mode '" + name + "' (expected mc|analytic|both|high-snr|oracle)");
}

std::vector<SchemeId> parse_schemes(const std::string& v) {
  std::vector<SchemeId> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto s = scheme_from_name(item);
    if (!s)
      throw std::invalid_argument(
          "unknown scheme '" + item +
          "' (expected bu|cs|rs|bu-pc|cs-pc|rs-pc|rs-fsic)");
    out.push_back(*s);
  }
  return out;
}

std::vector<std::pair<double, double>> parse_rate_pairs(const std::string& v,
                                                        const std::string& key) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto c = item.find(':');
    if (c == std::string::npos)
      throw std::invalid_argument("config key '" + key +
                                  "': rate pair needs R_B:R_F");
    out.emplace_back(parse_double(trim(item.substr(0, c)), key),
                     parse_double(trim(item.substr(c + 1)), key));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

void finalize(RunConfig& cfg) {
  std::vector<std::string> missing;
  if (cfg.snr_db.empty()) missing.push_back("snr_db");
  if (cfg.schemes.empty()) missing.push_back("schemes");
  if (!missing.empty()) {
    std::string msg = "incomplete configuration; missing required keys:";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }
  cfg.scenario.validate();
  if (cfg.metric != "outage" && cfg.metric != "admission" &&
      cfg.metric != "ergodic_rate")
    throw std::invalid_argument(
        "metric must be outage, admission, or ergodic_rate");
  if (cfg.quad_order < 1)
    throw std::invalid_argument("quad_order must be >= 1");
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  for (const auto& [rb, rf] : cfg.rate_pairs)
    if (rb <= 0 || rf <= 0)
      throw std::invalid_argument("rate pairs must be positive");
  for (const double a : cfg.alpha_sweep)
    if (a <= 0) throw std::invalid_argument("alpha values must be positive");
  std::vector<int> ks =
      cfg.K_sweep.empty() ? std::vector<int>{cfg.scenario.K} : cfg.K_sweep;
  for (const int k : ks)
    if (k < 1) throw std::invalid_argument("K must be >= 1");
  if (cfg.geometry) {
    const auto& g = *cfg.geometry;
    for (const int k : ks)
      if (g.gf_distances.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument(
            "geometry.gf must list exactly K distances for every swept K");
    if (g.gb_distance < 0)
      throw std::invalid_argument("geometry.gb must be nonnegative");
  }
  const bool has_bu =
      std::any_of(cfg.schemes.begin(), cfg.schemes.end(), [](SchemeId s) {
        return s == SchemeId::bu || s == SchemeId::bu_pc;
      });
  const bool analytic_mode = cfg.mode != RunMode::mc;
  if (has_bu && analytic_mode)
    for (const int k : ks)
      if (k < 2)
        throw std::invalid_argument(
            "best-user closed forms require K >= 2; at K = 1 every scheme "
            "coincides with the CDF-scheduling forms, so select scheme cs "
            "instead");
}

}  // namespace

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (const SchemeId s :
       {SchemeId::bu, SchemeId::cs, SchemeId::rs, SchemeId::bu_pc,
        SchemeId::cs_pc, SchemeId::rs_pc, SchemeId::rs_fsic})
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

std::string_view run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::mc: return "mc";
    case RunMode::analytic: return "analytic";
    case RunMode::both: return "both";
    case RunMode::high_snr: return "high-snr";
    case RunMode::oracle: return "oracle";
  }
  throw std::logic_error("unknown mode");
}

void apply_preset(RunConfig& cfg, const std::string& preset) {
  cfg.preset = preset;
  if (preset == "custom") return;
  // Shared simulation defaults (already in ScenarioParams): alpha = 3, K = 4,
  // D_F = D_1 = 3, D_0 = 1, R_B = 1, R_F = 0.9, joint power sweep.
  if (preset == "fig1a" || preset == "fig1b") {
    cfg.scenario.R_B = preset == "fig1a" ? 1.0 : 2.0;
    cfg.schemes = {SchemeId::bu, SchemeId::bu_pc, SchemeId::cs, SchemeId::rs};
    cfg.snr_db = {20.0};  // the admission comparison does not state an SNR
    cfg.metric = "admission";
    cfg.mode = RunMode::mc;
    cfg.geometry = FixedGeometryOverride{{1.0, 2.0, 3.0, 4.0}, 2.0};
    cfg.scenario.D_F = 4.0;  // keep the fixed distances inside the region
    return;
  }
  if (preset == "fig2") {
    cfg.scenario.D_F = 1.0;
    cfg.scenario.D_0 = 1.0;
    cfg.scenario.D_1 = 3.0;
    cfg.pin_pb_db = 10.0;
    cfg.schemes = {SchemeId::bu,    SchemeId::bu_pc, SchemeId::cs,
                   SchemeId::cs_pc, SchemeId::rs,    SchemeId::rs_pc,
                   SchemeId::rs_fsic};
    cfg.snr_db = parse_list("0:5:40", "snr_db");
    return;
  }
  if (preset == "fig3") {
    cfg.scenario.D_F = 10.0;
    cfg.scenario.D_1 = 10.0;
    cfg.scenario.D_0 = 1.0;
    cfg.scenario.R_B = 1.0;
    cfg.metric = "ergodic_rate";
    cfg.mode = RunMode::mc;  // no closed forms for the ergodic rate
    cfg.schemes = {SchemeId::bu,    SchemeId::bu_pc, SchemeId::cs,
                   SchemeId::cs_pc, SchemeId::rs,    SchemeId::rs_pc,
                   SchemeId::rs_fsic};
    cfg.snr_db = parse_list("0:5:40", "snr_db");
    return;
  }
  if (preset == "fig4a" || preset == "fig4b") {
    cfg.scenario.K = 3;
    cfg.schemes = preset == "fig4a"
                      ? std::vector<SchemeId>{SchemeId::cs, SchemeId::cs_pc}
                      : std::vector<SchemeId>{SchemeId::bu, SchemeId::bu_pc};
    cfg.snr_db = parse_list("0:5:45", "snr_db");
    return;
  }
  if (preset == "fig5a" || preset == "fig5b") {
    cfg.schemes = preset == "fig5a"
                      ? std::vector<SchemeId>{SchemeId::cs, SchemeId::cs_pc}
                      : std::vector<SchemeId>{SchemeId::bu, SchemeId::bu_pc};
    cfg.snr_db = parse_list("10:5:50", "snr_db");
    cfg.mode = RunMode::high_snr;
    return;
  }
  if (preset == "fig6") {
    cfg.schemes = {SchemeId::cs, SchemeId::cs_pc};
    cfg.K_sweep = {1, 2, 3};
    cfg.snr_db = parse_list("0:5:45", "snr_db");
    return;
  }
  if (preset == "fig7") {
    cfg.schemes = {SchemeId::bu_pc, SchemeId::cs_pc};
    cfg.rate_pairs = {{1.0, 0.5}, {1.0, 0.9}, {1.5, 0.9}};
    cfg.alpha_sweep = {3.0, 4.0};
    cfg.snr_db = parse_list("0:5:50", "snr_db");
    cfg.mode = RunMode::analytic;
    return;
  }
  throw std::invalid_argument("unknown preset '" + preset + "'");
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "preset") {
    apply_preset(cfg, value);
  } else if (key == "mode") {
    cfg.mode = mode_from_name(value);
  } else if (key == "trials") {
    cfg.trials = parse_u64(value, key);
    cfg.trials_from_user = true;
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, key);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_u64(value, key));
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "metric") {
    cfg.metric = value;
  } else if (key == "quad_order") {
    cfg.quad_order = static_cast<int>(parse_u64(value, key));
  } else if (key == "snr_db") {
    cfg.snr_db = parse_list(value, key);
  } else if (key == "K") {
    cfg.K_sweep.clear();
    for (const double k : parse_list(value, key)) {
      if (k < 1 || k != std::floor(k))
        throw std::invalid_argument("config key 'K': expected integers >= 1");
      cfg.K_sweep.push_back(static_cast<int>(k));
    }
  } else if (key == "rate_pairs") {
    cfg.rate_pairs = parse_rate_pairs(value, key);
  } else if (key == "alpha") {
    cfg.alpha_sweep = parse_list(value, key);
  } else if (key == "schemes") {
    cfg.schemes = parse_schemes(value);
  } else if (key == "pin_pb_db") {
    if (value == "none")
      cfg.pin_pb_db.reset();
    else
      cfg.pin_pb_db = parse_double(value, key);
  } else if (key == "geometry.gf") {
    if (!cfg.geometry) cfg.geometry = FixedGeometryOverride{};
    cfg.geometry->gf_distances = parse_list(value, key);
  } else if (key == "geometry.gb") {
    if (!cfg.geometry) cfg.geometry = FixedGeometryOverride{};
    cfg.geometry->gb_distance = parse_double(value, key);
  } else if (key == "scenario.alpha") {
    cfg.scenario.alpha = parse_double(value, key);
  } else if (key == "scenario.K") {
    cfg.scenario.K = static_cast<int>(parse_u64(value, key));
  } else if (key == "scenario.D_F") {
    cfg.scenario.D_F = parse_double(value, key);
  } else if (key == "scenario.D_F_inner") {
    cfg.scenario.D_F_inner = parse_double(value, key);
  } else if (key == "scenario.D_0") {
    cfg.scenario.D_0 = parse_double(value, key);
  } else if (key == "scenario.D_1") {
    cfg.scenario.D_1 = parse_double(value, key);
  } else if (key == "scenario.R_B") {
    cfg.scenario.R_B = parse_double(value, key);
  } else if (key == "scenario.R_F") {
    cfg.scenario.R_F = parse_double(value, key);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"semi-grant-free NOMA scheduling: Monte Carlo and closed-form "
               "outage sweeps"};
  std::string preset, mode, out_dir, config_path;
  std::uint64_t trials = 0, seed = 0;
  unsigned workers = 0;
  std::vector<std::string> sets;
  auto* o_preset = app.add_option("--preset", preset,
                                  "figure preset (fig1a..fig7) or custom");
  auto* o_mode =
      app.add_option("--mode", mode, "mc|analytic|both|high-snr|oracle");
  auto* o_trials = app.add_option("--trials", trials, "MC trials per point");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_workers = app.add_option("--workers", workers,
                                   "worker threads (0 = hardware)");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_config = app.add_option("--config", config_path,
                                  "key = value config file");
  app.add_option("--set", sets, "override single keys, key=value");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  RunConfig cfg;
  std::vector<std::pair<std::string, std::string>> file_kv;
  if (o_config->count()) file_kv = read_config_file(config_path);

  // Precedence: defaults < preset < config file < --set < dedicated flags.
  std::string preset_name = "custom";
  for (const auto& [k, v] : file_kv)
    if (k == "preset") preset_name = v;
  if (o_preset->count()) preset_name = preset;
  apply_preset(cfg, preset_name);

  for (const auto& [k, v] : file_kv)
    if (k != "preset") apply_config_key(cfg, k, v);

  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    apply_config_key(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }

  if (o_mode->count()) cfg.mode = mode_from_name(mode);
  if (o_trials->count()) {
    cfg.trials = trials;
    cfg.trials_from_user = true;
  }
  if (o_seed->count()) cfg.seed = seed;
  if (o_workers->count()) cfg.workers = workers;
  if (o_out->count()) cfg.out_dir = out_dir;

  finalize(cfg);
  return cfg;
}

}  // namespace sgf
