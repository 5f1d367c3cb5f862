// chaincx: almost-sure homology of random chain complexes.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chaincx/cli/commands.hpp"
#include "chaincx/cli/envelope.hpp"

namespace cli = chaincx::cli;

int main(int argc, char** argv) {
  CLI::App app{"Almost-sure homology of random chain complexes of real vector spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", CHAINCX_VERSION);

  std::string format = "json";
  std::string out_path;
  std::optional<double> rank_tol;
  std::optional<std::uint64_t> work_cap;
  std::string reading = "sentinel";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the envelope to FILE (atomically) instead of stdout");
  app.add_option("--rank-tol", rank_tol,
                 "Rank threshold factor (multiplies eps * max(rows, cols) * largest pivot); "
                 "overrides CHAINCX_RANK_TOL")
      ->check(CLI::PositiveNumber);
  app.add_option("--work-cap", work_cap,
                 "Brute-force candidate cap and sweep shape cap; overrides CHAINCX_WORK_CAP");
  app.add_option("--reading", reading,
                 "Hypothesis reading for the length-3 theorem and the conjecture")
      ->check(CLI::IsMember({"sentinel", "interior"}))
      ->capture_default_str();

  std::string dims, ranks;
  std::string method = "dp";
  std::uint64_t limit = chaincx::kDefaultEnumerationCap;
  std::uint64_t seed = 0, trials = 1;
  std::string save_complex;
  std::size_t max_length = 3;
  chaincx::Index max_entry = 4;
  std::string mode = "theorems";

  auto* dimension = app.add_subcommand("dimension", "Stratum dimension, Betti numbers, chi");
  dimension->add_option("--dims", dims, "Comma-separated dimensions a_0,...,a_n")->required();
  dimension->add_option("--ranks", ranks, "Comma-separated ranks r_1,...,r_n")->required();

  auto* maximize = app.add_subcommand("maximize", "Rank vectors of maximal stratum dimension");
  maximize->add_option("--dims", dims, "Comma-separated dimensions")->required();
  maximize->add_option("--method", method, "dp or brute")
      ->check(CLI::IsMember({"dp", "brute"}))
      ->capture_default_str();
  maximize->add_option("--limit", limit, "Maximizers to list")->capture_default_str();

  auto* predict = app.add_subcommand("predict", "Closed-form Betti predictions");
  predict->add_option("--dims", dims, "Comma-separated dimensions")->required();

  auto* check = app.add_subcommand("check", "Compare predictions with the optimizer");
  check->add_option("--dims", dims, "Comma-separated dimensions")->required();

  auto* verify = app.add_subcommand("verify-dim", "Formula vs numerical orbit dimension");
  verify->add_option("--dims", dims, "Comma-separated dimensions")->required();
  verify->add_option("--ranks", ranks, "Comma-separated ranks")->required();

  auto* sample = app.add_subcommand("sample", "Greedy sequential Gaussian sampler");
  sample->add_option("--dims", dims, "Comma-separated dimensions")->required();
  sample->add_option("--seed", seed, "Base seed; trial t uses seed + t")->capture_default_str();
  sample->add_option("--trials", trials, "Number of trials")->capture_default_str();
  sample->add_option("--save-complex", save_complex, "Write the first sampled complex as JSON");

  auto* sweep = app.add_subcommand("sweep", "Exhaustive theorem or conjecture scan");
  sweep->add_option("--max-length", max_length, "Largest number of maps n")->capture_default_str();
  sweep->add_option("--max-entry", max_entry, "Largest dimension")->capture_default_str();
  sweep->add_option("--mode", mode, "theorems or conjecture")
      ->check(CLI::IsMember({"theorems", "conjecture"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  cli::CommandResult result;
  try {
    cli::Settings settings = cli::Settings::from_environment();
    if (rank_tol) settings.tolerances.rank_tolerance_factor = *rank_tol;
    if (work_cap) settings.work_cap = *work_cap;
    settings.reading = reading == "interior" ? chaincx::HypothesisReading::Interior
                                             : chaincx::HypothesisReading::Sentinel;

    if (dimension->parsed()) {
      result = cli::cmd_dimension(cli::parse_index_list(dims), cli::parse_index_list(ranks));
    } else if (maximize->parsed()) {
      result = cli::cmd_maximize(cli::parse_index_list(dims),
                                 method == "brute" ? cli::MaximizeMethod::Brute
                                                   : cli::MaximizeMethod::Dp,
                                 limit, settings);
    } else if (predict->parsed()) {
      result = cli::cmd_predict(cli::parse_index_list(dims), settings);
    } else if (check->parsed()) {
      result = cli::cmd_check(cli::parse_index_list(dims), settings);
    } else if (verify->parsed()) {
      result = cli::cmd_verify_dim(cli::parse_index_list(dims), cli::parse_index_list(ranks),
                                   settings);
    } else if (sample->parsed()) {
      std::optional<std::string> save;
      if (!save_complex.empty()) save = save_complex;
      result = cli::cmd_sample(cli::parse_index_list(dims), seed, trials, settings, save);
    } else {
      result = cli::cmd_sweep(max_length, max_entry,
                              mode == "conjecture" ? cli::SweepMode::Conjecture
                                                   : cli::SweepMode::Theorems,
                              settings);
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "chaincx: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  const auto& payload = result.envelope.at("payload");
  if (payload.contains("error")) {
    std::cerr << "chaincx: " << payload["error"]["message"].get<std::string>() << '\n';
  }
  const std::string text =
      format == "table" ? cli::render_table(result.envelope) : result.envelope.dump(2) + "\n";
  try {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      cli::write_atomically(out_path, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "chaincx: " << e.what() << '\n';
    return 1;
  }
  return result.exit_code;
}
