#include "chaincx/cli/envelope.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace chaincx::cli {

using nlohmann::json;

json make_envelope(std::string_view command, const std::optional<ComplexShape>& shape,
                   json payload, std::vector<std::string> warnings) {
  return json{{"schema_version", kSchemaVersion},
              {"tool_version", CHAINCX_VERSION},
              {"command", command},
              {"shape", shape ? to_json(shape->dims()) : json(nullptr)},
              {"payload", std::move(payload)},
              {"warnings", std::move(warnings)}};
}

json to_json(std::span<const Index> values) {
  return json(std::vector<Index>(values.begin(), values.end()));
}

json to_json(const std::vector<RankVector>& vectors) {
  json out = json::array();
  for (const auto& v : vectors) out.push_back(to_json(v.values()));
  return out;
}

json to_json(const std::vector<BettiVector>& vectors) {
  json out = json::array();
  for (const auto& v : vectors) out.push_back(to_json(v.values()));
  return out;
}

json to_json(const BigCount& count) {
  if (count <= std::numeric_limits<std::uint64_t>::max()) {
    return json(count.convert_to<std::uint64_t>());
  }
  return json(count.str());
}

json to_json(const MaximizerReport& report) {
  return json{{"max_dimension", report.max_dimension},
              {"maximizer_count", to_json(report.maximizer_count)},
              {"maximizers", to_json(report.maximizers)},
              {"betti_spectrum", to_json(report.betti_spectrum)},
              {"truncated", report.truncated},
              {"enumeration_cap", report.enumeration_cap}};
}

json to_json(const Prediction& prediction) {
  json out{{"source_theorem", to_string(prediction.source)},
           {"applicable", prediction.applicable},
           {"predicted_betti_set", to_json(prediction.predicted_betti_set)},
           {"predicted_set_size", to_json(prediction.predicted_set_size)},
           {"predicted_sum", nullptr}};
  if (prediction.predicted_sum) out["predicted_sum"] = *prediction.predicted_sum;
  return out;
}

json to_json(const ComparisonResult& result) {
  json checks = json::array();
  for (const auto& check : result.checks) {
    json entry = to_json(check.prediction);
    entry["verdict"] = to_string(check.verdict);
    checks.push_back(std::move(entry));
  }
  return json{{"shape", to_json(result.shape.dims())},
              {"verdict", to_string(result.verdict)},
              {"checks", std::move(checks)},
              {"observed", to_json(result.observed)},
              {"observed_sum_betti",
               {{"min", result.observed_sum.min_total}, {"max", result.observed_sum.max_total}}},
              {"lower_bound", betti_lower_bound(result.shape)}};
}

namespace {

void render_value(std::ostringstream& out, const std::string& prefix, const json& value) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      render_value(out, prefix.empty() ? key : prefix + "." + key, child);
    }
    return;
  }
  out << prefix;
  if (prefix.size() < 28) out << std::string(28 - prefix.size(), ' ');
  out << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

}  // namespace

std::string render_table(const json& envelope) {
  std::ostringstream out;
  out << "command" << std::string(21, ' ') << ' ' << envelope.at("command").get<std::string>()
      << '\n';
  if (!envelope.at("shape").is_null()) {
    out << "shape" << std::string(23, ' ') << ' ' << envelope.at("shape").dump() << '\n';
  }
  render_value(out, "", envelope.at("payload"));
  for (const auto& warning : envelope.at("warnings")) {
    out << "warning: " << warning.get<std::string>() << '\n';
  }
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("failed writing " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::runtime_error("cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace chaincx::cli
