#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chaincx/cli/commands.hpp"
#include "chaincx/cli/envelope.hpp"
#include "chaincx/complex_io.hpp"

using namespace chaincx;
using namespace chaincx::cli;
using nlohmann::json;

namespace {

const json& payload(const CommandResult& r) { return r.envelope.at("payload"); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct ScopedEnv {
  std::string name;
  ScopedEnv(std::string n, const char* value) : name(std::move(n)) {
    ::setenv(name.c_str(), value, 1);
  }
  ~ScopedEnv() { ::unsetenv(name.c_str()); }
};

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("chaincx-test-" + std::to_string(::getpid()) + "-" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("index lists") {
  CHECK(parse_index_list("1,2,3") == std::vector<Index>{1, 2, 3});
  CHECK(parse_index_list("7") == std::vector<Index>{7});
  CHECK(parse_index_list("").empty());
  CHECK_THROWS_AS(parse_index_list("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_index_list("1,2,"), UsageError);
  CHECK_THROWS_AS(parse_index_list("1,x"), UsageError);
  CHECK_THROWS_AS(parse_index_list("1,-2"), UsageError);
  CHECK_THROWS_AS(parse_index_list(" 1"), UsageError);
  CHECK_THROWS_AS(parse_index_list("99999999999999999999"), UsageError);
}

TEST_CASE("envelope") {
  const auto r = cmd_dimension({2, 1, 1, 2}, {1, 0, 1});
  const json& e = r.envelope;
  CHECK(e.at("schema_version") == kSchemaVersion);
  CHECK(e.at("tool_version").is_string());
  CHECK(e.at("command") == "dimension");
  CHECK(e.at("shape") == json::array({2, 1, 1, 2}));
  CHECK(e.at("warnings").empty());
  CHECK(to_json(BigCount(5)) == 5);
  BigCount big = 1;
  for (int k = 0; k < 70; ++k) big *= 2;
  CHECK(to_json(big) == "1180591620717411303424");
}

TEST_CASE("dimension command") {
  const auto ok = cmd_dimension({2, 1, 1, 2}, {1, 0, 1});
  CHECK(ok.exit_code == kExitOk);
  CHECK(payload(ok).at("d") == 4);
  CHECK(payload(ok).at("betti") == json::array({1, 0, 0, 1}));
  CHECK(payload(ok).at("chi") == 0);
  CHECK(payload(ok).at("sum_betti") == 2);
  CHECK(payload(ok).at("feasible") == true);

  const auto infeasible = cmd_dimension({1, 1, 1}, {1, 1});
  CHECK(infeasible.exit_code == kExitInfeasible);
  CHECK(payload(infeasible).at("feasible") == false);
  CHECK(payload(infeasible).at("error").at("kind") == "infeasible");

  CHECK(cmd_dimension({1, 1, 1}, {1}).exit_code == kExitUsage);
  CHECK(cmd_dimension({}, {}).exit_code == kExitUsage);
  CHECK(cmd_dimension({1, 1, 1}, {1}).envelope.at("shape") == json::array({1, 1, 1}));
  CHECK(cmd_dimension({}, {}).envelope.at("shape").is_null());
}

TEST_CASE("maximize command") {
  const Settings settings;
  const auto dp = cmd_maximize({3, 1, 3}, MaximizeMethod::Dp, 100, settings);
  CHECK(dp.exit_code == kExitOk);
  CHECK(payload(dp).at("maximizer_count") == 2);
  CHECK(payload(dp).at("max_dimension") == 3);
  CHECK(payload(dp).at("maximizers") == json::parse("[[0,1],[1,0]]"));
  CHECK(payload(dp).at("method") == "dp");

  const auto brute = cmd_maximize({3, 1, 3}, MaximizeMethod::Brute, 100, settings);
  CHECK(payload(brute).at("maximizers") == payload(dp).at("maximizers"));

  const auto capped = cmd_maximize(std::vector<Index>(13, 39), MaximizeMethod::Dp, 3, settings);
  CHECK(payload(capped).at("truncated") == true);
  CHECK(payload(capped).at("maximizers").size() == 3);
  CHECK(payload(capped).at("maximizer_count") == 35);

  Settings tight;
  tight.work_cap = 10;
  const auto refused = cmd_maximize({4, 4, 4, 4}, MaximizeMethod::Brute, 100, tight);
  CHECK(refused.exit_code == kExitResourceCap);
  CHECK(payload(refused).at("error").at("kind") == "resource_cap");

  CHECK(cmd_maximize({3, 1, 3}, MaximizeMethod::Dp, 0, settings).exit_code == kExitUsage);
}

TEST_CASE("predict command") {
  const auto r = cmd_predict({3, 1, 3}, Settings{});
  CHECK(r.exit_code == kExitOk);
  const json& predictions = payload(r).at("predictions");
  CHECK(predictions.size() == 7);
  CHECK(payload(r).at("any_applicable") == true);
  for (const auto& p : predictions) {
    if (p.at("source_theorem") == "Length2") {
      CHECK(p.at("applicable") == true);
      CHECK(p.at("predicted_betti_set") == json::parse("[[2,0,3],[3,0,2]]"));
    }
  }
  const auto none = cmd_predict({2, 1, 1, 2}, Settings{});
  CHECK(payload(none).at("any_applicable") == false);
  Settings interior;
  interior.reading = HypothesisReading::Interior;
  CHECK(payload(cmd_predict({2, 1, 1, 2}, interior)).at("any_applicable") == true);
}

TEST_CASE("check command") {
  const auto match = cmd_check({3, 1, 3}, Settings{});
  CHECK(match.exit_code == kExitOk);
  CHECK(payload(match).at("verdict") == "Match");

  const auto na = cmd_check({2, 1, 1, 2}, Settings{});
  CHECK(na.exit_code == kExitOk);
  CHECK(payload(na).at("verdict") == "NotApplicable");

  Settings interior;
  interior.reading = HypothesisReading::Interior;
  const auto mismatch = cmd_check({2, 1, 1, 2}, interior);
  CHECK(mismatch.exit_code == kExitMismatch);
  CHECK(payload(mismatch).at("verdict") == "Mismatch");
  CHECK(payload(mismatch).at("hypothesis_reading") == "interior");
}

TEST_CASE("verify-dim command") {
  const auto r = cmd_verify_dim({2, 2, 2}, {1, 1}, Settings{});
  CHECK(r.exit_code == kExitOk);
  CHECK(payload(r).at("formula_d") == 5);
  CHECK(payload(r).at("orbit_d") == 5);
  CHECK(payload(r).at("agree") == true);

  CHECK(cmd_verify_dim({1, 1, 1}, {1, 1}, Settings{}).exit_code == kExitInfeasible);

  Settings tiny;
  tiny.tolerances.orbit_size_cap = 4;
  CHECK(cmd_verify_dim({3, 3}, {1}, tiny).exit_code == kExitResourceCap);

  // An absurd threshold zeroes every pivot, so the numerics disagree.
  Settings blunt;
  blunt.tolerances.rank_tolerance_factor = 1e17;
  const auto off = cmd_verify_dim({2, 2, 2}, {1, 1}, blunt);
  CHECK(off.exit_code == kExitNumericalDisagreement);
  CHECK(payload(off).at("agree") == false);
}

TEST_CASE("sample command") {
  const auto r = cmd_sample({1, 2, 1, 2}, 0, 5, Settings{});
  CHECK(r.exit_code == kExitOk);
  CHECK(payload(r).at("trial_ranks") == json::parse("[[1,1,0],[1,1,0],[1,1,0],[1,1,0],[1,1,0]]"));
  CHECK(payload(r).at("bias") == true);
  CHECK(payload(r).at("greedy_dimension") == 3);
  CHECK(payload(r).at("max_dimension") == 4);
  CHECK(payload(r).at("trials_matching_greedy") == 5);
  CHECK(r.envelope.at("warnings").size() == 1);

  CHECK(payload(cmd_sample({3, 3, 3, 3}, 0, 2, Settings{})).at("bias") == false);
  CHECK(cmd_sample({1, 2}, 0, 0, Settings{}).exit_code == kExitUsage);

  SUBCASE("reproducible and saved complex parses back") {
    TempDir dir;
    const auto file = dir.path / "complex.json";
    const auto a = cmd_sample({3, 4, 2}, 9, 1, Settings{}, file.string());
    const auto b = cmd_sample({3, 4, 2}, 9, 1, Settings{});
    CHECK(a.envelope == b.envelope);
    const auto complex = parse_complex(read_file(file));
    CHECK(complex.shape == ComplexShape{3, 4, 2});
    CHECK(serialize_complex(complex) == serialize_complex(sequential_sample({3, 4, 2}, 9)));
  }
}

TEST_CASE("sweep command") {
  const auto theorems = cmd_sweep(3, 4, SweepMode::Theorems, Settings{});
  CHECK(theorems.exit_code == kExitOk);
  CHECK(payload(theorems).at("mismatch") == 0);
  CHECK(theorems.envelope.at("shape").is_null());

  const auto conjecture = cmd_sweep(3, 3, SweepMode::Conjecture, Settings{});
  CHECK(conjecture.exit_code == kExitOk);
  CHECK(payload(conjecture).at("counterexamples").empty());

  Settings interior;
  interior.reading = HypothesisReading::Interior;
  const auto failing = cmd_sweep(3, 2, SweepMode::Conjecture, interior);
  CHECK(failing.exit_code == kExitMismatch);
  CHECK_FALSE(payload(failing).at("counterexamples").empty());

  Settings tight;
  tight.work_cap = 5;
  const auto partial = cmd_sweep(3, 3, SweepMode::Theorems, tight);
  CHECK(partial.exit_code == kExitResourceCap);
  CHECK(payload(partial).at("truncated") == true);
  CHECK(partial.envelope.at("warnings").size() == 1);

  CHECK(cmd_sweep(2, -1, SweepMode::Theorems, Settings{}).exit_code == kExitUsage);
}

TEST_CASE("environment overrides") {
  {
    const Settings defaults = Settings::from_environment();
    CHECK(defaults.tolerances.rank_tolerance_factor == 1000);
    CHECK(defaults.work_cap == kDefaultBruteForceCap);
  }
  {
    ScopedEnv tol("CHAINCX_RANK_TOL", "250.5");
    ScopedEnv cap("CHAINCX_WORK_CAP", "1234");
    const Settings s = Settings::from_environment();
    CHECK(s.tolerances.rank_tolerance_factor == 250.5);
    CHECK(s.work_cap == 1234);
  }
  {
    ScopedEnv tol("CHAINCX_RANK_TOL", "-1");
    CHECK_THROWS_AS(Settings::from_environment(), UsageError);
  }
  {
    ScopedEnv cap("CHAINCX_WORK_CAP", "lots");
    CHECK_THROWS_AS(Settings::from_environment(), UsageError);
  }
}

TEST_CASE("table rendering") {
  const auto text = render_table(cmd_dimension({2, 1, 1, 2}, {1, 0, 1}).envelope);
  CHECK(text.find("command") == 0);
  CHECK(text.find("dimension") != std::string::npos);
  CHECK(text.find("d                            4\n") != std::string::npos);
  const auto sample = render_table(cmd_sample({1, 2}, 0, 1, Settings{}).envelope);
  CHECK(sample.find("warning: ") != std::string::npos);
}

TEST_CASE("atomic writes") {
  TempDir dir;
  const auto file = dir.path / "out.json";
  write_atomically(file, "first\n");
  write_atomically(file, "second\n");
  CHECK(read_file(file) == "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS(write_atomically(dir.path / "missing" / "out.json", "x"));
}
