#include "chaincx/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>

#include "chaincx/cli/envelope.hpp"
#include "chaincx/complex_io.hpp"
#include "chaincx/rank_optimizer.hpp"

namespace chaincx::cli {

using nlohmann::json;

namespace {

constexpr const char* kSamplerWarning =
    "sequential sampler does not realize the conditional measure; ranks are greedy and biased";

json error_payload(std::string_view kind, std::string_view message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

// Runs `body` and maps the library's exceptions onto exit codes.
CommandResult guarded(std::string_view command, const std::vector<Index>& dims,
                      const std::function<CommandResult(const ComplexShape&)>& body) {
  std::optional<ComplexShape> shape;
  try {
    shape.emplace(dims);
    return body(*shape);
  } catch (const WorkCapExceeded& e) {
    return {make_envelope(command, shape, error_payload("resource_cap", e.what())),
            kExitResourceCap};
  } catch (const ContractViolation& e) {
    return {make_envelope(command, shape, error_payload("usage", e.what())), kExitUsage};
  } catch (const DomainError& e) {
    return {make_envelope(command, shape, error_payload("infeasible", e.what())),
            kExitInfeasible};
  }
}

std::optional<std::uint64_t> env_u64(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const std::string_view text(raw);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError(std::string(name) + " must be a non-negative integer");
  }
  return value;
}

std::optional<double> env_double(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0)) {
    throw UsageError(std::string(name) + " must be a positive number");
  }
  return value;
}

}  // namespace

Settings Settings::from_environment() {
  Settings settings;
  if (auto tol = env_double("CHAINCX_RANK_TOL")) settings.tolerances.rank_tolerance_factor = *tol;
  if (auto cap = env_u64("CHAINCX_WORK_CAP")) settings.work_cap = *cap;
  return settings;
}

std::vector<Index> parse_index_list(std::string_view text) {
  std::vector<Index> values;
  if (text.empty()) return values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    Index value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw UsageError("cannot parse \"" + std::string(token) + "\" as an integer in \"" +
                       std::string(text) + "\"");
    }
    if (value < 0) throw UsageError("negative value in \"" + std::string(text) + "\"");
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

CommandResult cmd_dimension(const std::vector<Index>& dims, const std::vector<Index>& ranks_in) {
  return guarded("dimension", dims, [&](const ComplexShape& shape) -> CommandResult {
    const RankVector ranks(ranks_in);
    json payload{{"ranks", to_json(ranks.values())},
                 {"N", ambient_dimension(shape)},
                 {"chi", euler_characteristic(shape)},
                 {"lower_bound", betti_lower_bound(shape)}};
    if (!is_feasible(shape, ranks)) {
      payload["feasible"] = false;
      payload["error"] = {{"kind", "infeasible"},
                          {"message", "rank vector " + to_string(ranks) +
                                          " violates r_i + r_{i+1} <= a_i"}};
      return {make_envelope("dimension", shape, std::move(payload)), kExitInfeasible};
    }
    const BettiVector betti = betti_from_ranks(shape, ranks);
    payload["feasible"] = true;
    payload["d"] = stratum_dimension(shape, ranks);
    payload["betti"] = to_json(betti.values());
    payload["sum_betti"] = betti.total();
    return {make_envelope("dimension", shape, std::move(payload)), kExitOk};
  });
}

CommandResult cmd_maximize(const std::vector<Index>& dims, MaximizeMethod method,
                           std::uint64_t limit, const Settings& settings) {
  return guarded("maximize", dims, [&](const ComplexShape& shape) -> CommandResult {
    if (limit == 0) throw ContractViolation("--limit must be positive");
    const MaximizerReport report = method == MaximizeMethod::Brute
                                       ? brute_force_maximize(shape, settings.work_cap)
                                       : enumerate_maximizers(shape, limit);
    json payload = to_json(report);
    payload["method"] = method == MaximizeMethod::Brute ? "brute" : "dp";
    return {make_envelope("maximize", shape, std::move(payload)), kExitOk};
  });
}

CommandResult cmd_predict(const std::vector<Index>& dims, const Settings& settings) {
  return guarded("predict", dims, [&](const ComplexShape& shape) -> CommandResult {
    const std::vector<Prediction> all = {predict_no_maps(shape),
                                         predict_length1(shape),
                                         predict_length2(shape),
                                         predict_length3_sum(shape, settings.reading),
                                         predict_equal_dim(shape),
                                         predict_equal_even_sum(shape),
                                         predict_conjecture(shape, settings.reading)};
    json predictions = json::array();
    bool any = false;
    for (const auto& p : all) {
      predictions.push_back(to_json(p));
      any |= p.applicable;
    }
    json payload{{"hypothesis_reading", to_string(settings.reading)},
                 {"any_applicable", any},
                 {"predictions", std::move(predictions)}};
    return {make_envelope("predict", shape, std::move(payload)), kExitOk};
  });
}

CommandResult cmd_check(const std::vector<Index>& dims, const Settings& settings) {
  return guarded("check", dims, [&](const ComplexShape& shape) -> CommandResult {
    const ComparisonResult result = check_shape(shape, settings.reading);
    json payload = to_json(result);
    payload["hypothesis_reading"] = to_string(settings.reading);
    const int code = result.verdict == Verdict::Mismatch ? kExitMismatch : kExitOk;
    return {make_envelope("check", shape, std::move(payload)), code};
  });
}

CommandResult cmd_verify_dim(const std::vector<Index>& dims, const std::vector<Index>& ranks_in,
                             const Settings& settings) {
  return guarded("verify-dim", dims, [&](const ComplexShape& shape) -> CommandResult {
    const RankVector ranks(ranks_in);
    const Index formula = stratum_dimension(shape, ranks);
    const auto complex = canonical_complex<double>(shape, ranks);
    const Index orbit = orbit_dimension(complex, settings.tolerances);
    json payload{{"ranks", to_json(ranks.values())},
                 {"formula_d", formula},
                 {"orbit_d", orbit},
                 {"agree", formula == orbit},
                 {"rank_tolerance_factor", settings.tolerances.rank_tolerance_factor}};
    return {make_envelope("verify-dim", shape, std::move(payload)),
            formula == orbit ? kExitOk : kExitNumericalDisagreement};
  });
}

CommandResult cmd_sample(const std::vector<Index>& dims, std::uint64_t seed, std::uint64_t trials,
                         const Settings& settings, const std::optional<std::string>& save_complex) {
  return guarded("sample", dims, [&](const ComplexShape& shape) -> CommandResult {
    if (trials == 0) throw ContractViolation("--trials must be positive");
    const RankVector greedy = greedy_rank_vector(shape);
    const MaximizerReport maximizers = enumerate_maximizers(shape);
    const bool greedy_is_maximizer =
        std::binary_search(maximizers.maximizers.begin(), maximizers.maximizers.end(), greedy) ||
        (maximizers.truncated && stratum_dimension(shape, greedy) == maximizers.max_dimension);

    json trial_ranks = json::array();
    std::uint64_t greedy_hits = 0;
    double worst_defect = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const auto complex = sequential_sample<double>(shape, seed + t, settings.tolerances);
      if (t == 0 && save_complex) write_atomically(*save_complex, serialize_complex(complex) + "\n");
      worst_defect = std::max(worst_defect, composition_defect(complex));
      const RankVector ranks = numerical_ranks(complex, settings.tolerances);
      if (ranks == greedy) ++greedy_hits;
      trial_ranks.push_back(to_json(ranks.values()));
    }
    json payload{{"sampler", "greedy-sequential"},
                 {"seed", seed},
                 {"trials", trials},
                 {"trial_ranks", std::move(trial_ranks)},
                 {"greedy_ranks", to_json(greedy.values())},
                 {"greedy_dimension", stratum_dimension(shape, greedy)},
                 {"trials_matching_greedy", greedy_hits},
                 {"max_dimension", maximizers.max_dimension},
                 {"maximizers", to_json(maximizers.maximizers)},
                 {"maximizer_count", to_json(maximizers.maximizer_count)},
                 {"bias", !greedy_is_maximizer},
                 {"max_composition_defect", worst_defect}};
    return {make_envelope("sample", shape, std::move(payload), {kSamplerWarning}), kExitOk};
  });
}

CommandResult cmd_sweep(std::size_t max_length, Index max_entry, SweepMode mode,
                        const Settings& settings) {
  const char* name = "sweep";
  try {
    if (max_entry < 0) throw ContractViolation("--max-entry must be non-negative");
    if (max_length > kMaxLength) throw ContractViolation("--max-length too large");
    const ScanReport report =
        mode == SweepMode::Conjecture
            ? conjecture_scan(max_length, max_entry, settings.reading, settings.work_cap)
            : theorem_sweep(max_length, max_entry, settings.reading, settings.work_cap);
    json failures = json::array();
    for (const auto& f : report.failures) failures.push_back(to_json(f));
    json payload{{"mode", mode == SweepMode::Conjecture ? "conjecture" : "theorems"},
                 {"hypothesis_reading", to_string(settings.reading)},
                 {"max_length", max_length},
                 {"max_entry", max_entry},
                 {"shapes_visited", report.shapes_visited},
                 {"shapes_checked", report.hypothesis_shapes},
                 {"match", report.match_count},
                 {"mismatch", report.mismatch_count},
                 {"not_applicable", report.not_applicable_count},
                 {"truncated", report.truncated},
                 {mode == SweepMode::Conjecture ? "counterexamples" : "mismatches",
                  std::move(failures)}};
    std::vector<std::string> warnings;
    if (report.truncated) warnings.emplace_back("sweep stopped at the work cap; results are partial");
    const int code = !report.failures.empty() ? kExitMismatch
                     : report.truncated       ? kExitResourceCap
                                              : kExitOk;
    return {make_envelope(name, std::nullopt, std::move(payload), std::move(warnings)), code};
  } catch (const ContractViolation& e) {
    return {make_envelope(name, std::nullopt, error_payload("usage", e.what())), kExitUsage};
  }
}

}  // namespace chaincx::cli
