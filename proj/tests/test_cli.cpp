#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sgf/runconfig.hpp"

using namespace sgf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("sgf_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets expand to their figure parameters") {
  const RunConfig fig2 = parse_config({"--preset", "fig2"});
  CHECK(fig2.scenario.D_F == 1.0);
  CHECK(fig2.scenario.D_0 == 1.0);
  CHECK(fig2.scenario.D_1 == 3.0);
  REQUIRE(fig2.pin_pb_db.has_value());
  CHECK(*fig2.pin_pb_db == 10.0);
  CHECK(fig2.schemes.size() == 7);
  CHECK(fig2.snr_db.size() == 9);  // 0:5:40

  const RunConfig fig7 = parse_config({"--preset", "fig7"});
  REQUIRE(fig7.rate_pairs.size() == 3);
  CHECK(fig7.rate_pairs[0] == std::pair<double, double>{1.0, 0.5});
  CHECK(fig7.rate_pairs[1] == std::pair<double, double>{1.0, 0.9});
  CHECK(fig7.rate_pairs[2] == std::pair<double, double>{1.5, 0.9});
  CHECK(fig7.alpha_sweep == std::vector<double>{3.0, 4.0});
  CHECK(fig7.schemes ==
        std::vector<SchemeId>{SchemeId::bu_pc, SchemeId::cs_pc});
  CHECK(fig7.mode == RunMode::analytic);

  const RunConfig fig1a = parse_config({"--preset", "fig1a"});
  CHECK(fig1a.metric == "admission");
  CHECK(fig1a.scenario.R_B == 1.0);
  REQUIRE(fig1a.geometry.has_value());
  CHECK(fig1a.geometry->gf_distances ==
        std::vector<double>{1.0, 2.0, 3.0, 4.0});
  const RunConfig fig1b = parse_config({"--preset", "fig1b"});
  CHECK(fig1b.scenario.R_B == 2.0);

  const RunConfig fig5a = parse_config({"--preset", "fig5a"});
  CHECK(fig5a.mode == RunMode::high_snr);

  const RunConfig fig6 = parse_config({"--preset", "fig6"});
  CHECK(fig6.K_sweep == std::vector<int>{1, 2, 3});

  CHECK_THROWS_AS(parse_config({"--preset", "fig99"}), std::invalid_argument);
}

TEST_CASE("incomplete custom configs list their missing keys") {
  try {
    parse_config({"--mode", "analytic"});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("snr_db") != std::string::npos);
    CHECK(msg.find("schemes") != std::string::npos);
  }
}

TEST_CASE("precedence: file under --set under dedicated flags") {
  const fs::path dir = fresh_dir("precedence");
  const fs::path cfgfile = dir / "run.cfg";
  {
    std::ofstream out(cfgfile);
    out << "# comment line\n"
        << "schemes = cs\n"
        << "snr_db = 0:5:10\n"
        << "trials = 5\n"
        << "scenario.K = 2\n";
  }
  const RunConfig c1 = parse_config({"--config", cfgfile.string()});
  CHECK(c1.trials == 5);
  CHECK(c1.trials_from_user);
  CHECK(c1.scenario.K == 2);
  CHECK(c1.snr_db == std::vector<double>{0.0, 5.0, 10.0});

  const RunConfig c2 = parse_config(
      {"--config", cfgfile.string(), "--set", "scenario.K=3", "--trials", "7"});
  CHECK(c2.trials == 7);
  CHECK(c2.scenario.K == 3);
  fs::remove_all(dir);
}

TEST_CASE("malformed inputs throw with context") {
  CHECK_THROWS_AS(parse_config({"--set", "bogus_key=1", "--set",
                                "schemes=cs", "--set", "snr_db=10"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config({"--set", "schemes=nope", "--set",
                                "snr_db=10"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config({"--mode", "sideways", "--set", "schemes=cs",
                                "--set", "snr_db=10"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config({"--set", "snr_db=40:5:0", "--set",
                                "schemes=cs"}),
                  std::invalid_argument);

  const fs::path dir = fresh_dir("badfile");
  const fs::path cfgfile = dir / "bad.cfg";
  {
    std::ofstream out(cfgfile);
    out << "schemes = cs\nthis line has no equals\n";
  }
  try {
    parse_config({"--config", cfgfile.string()});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    // Compiler-style "path:2:" pinpoints the offending line.
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("best-user analytic modes refuse K = 1 with a redirect") {
  try {
    parse_config({"--mode", "analytic", "--set", "schemes=bu", "--set",
                  "snr_db=10", "--set", "scenario.K=1"});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("scheme cs") != std::string::npos);
  }
  // Pure MC mode has no such restriction.
  CHECK_NOTHROW(parse_config({"--mode", "mc", "--set", "schemes=bu", "--set",
                              "snr_db=10", "--set", "scenario.K=1"}));
}

TEST_CASE("geometry overrides must match every swept K") {
  CHECK_THROWS_AS(
      parse_config({"--set", "schemes=cs", "--set", "snr_db=10", "--set",
                    "geometry.gf=1,2", "--set", "scenario.K=3"}),
      std::invalid_argument);
  CHECK_NOTHROW(
      parse_config({"--set", "schemes=cs", "--set", "snr_db=10", "--set",
                    "geometry.gf=1,2,3", "--set", "scenario.K=3"}));
}

TEST_CASE("scheme and mode names round-trip") {
  CHECK(scheme_from_name("bu-pc") == SchemeId::bu_pc);
  CHECK(scheme_from_name("rs-fsic") == SchemeId::rs_fsic);
  CHECK_FALSE(scheme_from_name("na").has_value());
  CHECK(run_mode_name(RunMode::high_snr) == "high-snr");
}

TEST_CASE("execute writes the stable schema and reruns byte-identically") {
  RunConfig cfg = parse_config({"--mode", "analytic", "--set", "schemes=cs",
                                "--set", "snr_db=10,20", "--set",
                                "scenario.K=2"});
  const fs::path d1 = fresh_dir("exec1");
  const fs::path d2 = fresh_dir("exec2");
  cfg.out_dir = d1.string();
  REQUIRE(execute(cfg) == 0);
  cfg.out_dir = d2.string();
  REQUIRE(execute(cfg) == 0);

  const std::string csv1 = slurp(d1 / "custom.csv");
  CHECK(csv1 == slurp(d2 / "custom.csv"));
  CHECK(csv1.rfind("preset,scheme,mode,snr_db,K,R_B,R_F,alpha,metric,"
                   "user_index,value,ci_low,ci_high,trials\n",
                   0) == 0);
  // Two analytic rows, one per SNR point.
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 3);
  CHECK(fs::exists(d1 / "manifest.json"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("execute in mc mode emits CI columns and honors the seed") {
  RunConfig cfg = parse_config({"--mode", "mc", "--trials", "2000", "--seed",
                                "11", "--set", "schemes=rs", "--set",
                                "snr_db=10", "--set", "scenario.K=2"});
  const fs::path dir = fresh_dir("execmc");
  cfg.out_dir = dir.string();
  REQUIRE(execute(cfg) == 0);
  const std::string csv = slurp(dir / "custom.csv");
  // outage + gb_outage rows, trials column = 2000.
  CHECK(csv.find(",outage,") != std::string::npos);
  CHECK(csv.find(",gb_outage,") != std::string::npos);
  CHECK(csv.find(",2000\n") != std::string::npos);
  const std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("\"seed\": 11") != std::string::npos);
  CHECK(manifest.find("\"failures\": []") != std::string::npos);
  fs::remove_all(dir);
}
