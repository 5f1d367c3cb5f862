// Command implementations behind the chaincx executable. Each returns the
// output envelope and the process exit code without printing.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaincx/complex_core.hpp"
#include "chaincx/numerics.hpp"
#include "chaincx/theory.hpp"

namespace chaincx::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 2,
  kExitResourceCap = 3,
  kExitMismatch = 4,
  kExitNumericalDisagreement = 5,
  kExitUsage = 64,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  nlohmann::json envelope;
  int exit_code = kExitOk;
};

struct Settings {
  ToleranceConfig<double> tolerances;
  /// Brute-force candidate cap and sweep shape cap.
  std::uint64_t work_cap = kDefaultBruteForceCap;
  HypothesisReading reading = HypothesisReading::Sentinel;

  /// Defaults overridden by CHAINCX_RANK_TOL and CHAINCX_WORK_CAP when set.
  static Settings from_environment();
};

enum class MaximizeMethod { Dp, Brute };
enum class SweepMode { Theorems, Conjecture };

/// Comma-separated decimal integers; the empty string is the empty list.
std::vector<Index> parse_index_list(std::string_view text);

CommandResult cmd_dimension(const std::vector<Index>& dims, const std::vector<Index>& ranks);
CommandResult cmd_maximize(const std::vector<Index>& dims, MaximizeMethod method,
                           std::uint64_t limit, const Settings& settings);
CommandResult cmd_predict(const std::vector<Index>& dims, const Settings& settings);
CommandResult cmd_check(const std::vector<Index>& dims, const Settings& settings);
CommandResult cmd_verify_dim(const std::vector<Index>& dims, const std::vector<Index>& ranks,
                             const Settings& settings);
/// Trial t samples with seed + t. When `save_complex` is set, the first
/// trial's complex is written there as JSON.
CommandResult cmd_sample(const std::vector<Index>& dims, std::uint64_t seed, std::uint64_t trials,
                         const Settings& settings,
                         const std::optional<std::string>& save_complex = std::nullopt);
CommandResult cmd_sweep(std::size_t max_length, Index max_entry, SweepMode mode,
                        const Settings& settings);

}  // namespace chaincx::cli
