// Output envelope shared by every command:
//
//   {"schema_version": 1, "tool_version": "...", "command": "...",
//    "shape": [a_0, ...] | null, "payload": {...}, "warnings": [...]}
//
// Failed commands carry {"error": {"kind": ..., "message": ...}} as payload.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaincx/complex_core.hpp"
#include "chaincx/rank_optimizer.hpp"
#include "chaincx/theory.hpp"

namespace chaincx::cli {

inline constexpr int kSchemaVersion = 1;

nlohmann::json make_envelope(std::string_view command, const std::optional<ComplexShape>& shape,
                             nlohmann::json payload, std::vector<std::string> warnings = {});

nlohmann::json to_json(std::span<const Index> values);
nlohmann::json to_json(const std::vector<RankVector>& vectors);
nlohmann::json to_json(const std::vector<BettiVector>& vectors);
/// JSON integer when the count fits in 64 bits, decimal string otherwise.
nlohmann::json to_json(const BigCount& count);
nlohmann::json to_json(const MaximizerReport& report);
nlohmann::json to_json(const Prediction& prediction);
nlohmann::json to_json(const ComparisonResult& result);

/// Human-readable rendering of an envelope's payload.
std::string render_table(const nlohmann::json& envelope);

/// Writes `text` next to `path` and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace chaincx::cli
