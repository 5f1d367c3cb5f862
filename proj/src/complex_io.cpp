#include "chaincx/complex_io.hpp"

#include <cmath>

namespace chaincx {

using nlohmann::json;

json complex_to_json(const NumericalComplex<double>& complex) {
  json maps = json::array();
  for (const auto& d : complex.maps) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      for (Eigen::Index c = 0; c < d.cols(); ++c) entries.push_back(d(r, c));
    }
    maps.push_back(std::move(entries));
  }
  const std::vector<Index> dims(complex.shape.dims().begin(), complex.shape.dims().end());
  return json{{"dims", dims},
              {"maps", std::move(maps)},
              {"tolerance", complex.composition_tolerance}};
}

NumericalComplex<double> complex_from_json(const json& document) {
  auto malformed = [](const std::string& what) {
    return ContractViolation("malformed complex document: " + what);
  };
  if (!document.is_object()) throw malformed("expected an object");
  for (const char* key : {"dims", "maps", "tolerance"}) {
    if (!document.contains(key)) throw malformed(std::string("missing \"") + key + "\"");
  }
  const json& dims = document.at("dims");
  if (!dims.is_array()) throw malformed("\"dims\" must be an array");
  std::vector<Index> values;
  for (const json& a : dims) {
    if (!a.is_number_integer()) throw malformed("\"dims\" entries must be integers");
    values.push_back(a.get<Index>());
  }

  NumericalComplex<double> complex;
  complex.shape = ComplexShape(std::move(values));
  if (!document.at("tolerance").is_number()) throw malformed("\"tolerance\" must be a number");
  complex.composition_tolerance = document.at("tolerance").get<double>();

  const json& maps = document.at("maps");
  if (!maps.is_array() || maps.size() != complex.shape.length()) {
    throw malformed("\"maps\" must hold one array per boundary map");
  }
  for (std::size_t i = 1; i <= complex.shape.length(); ++i) {
    const json& entries = maps[i - 1];
    const Index rows = complex.shape[i - 1], cols = complex.shape[i];
    if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
      throw malformed("map " + std::to_string(i) + " must have " + std::to_string(rows * cols) +
                      " entries");
    }
    DenseMatrix<double> d(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) {
        const json& x = entries[static_cast<std::size_t>(r * cols + c)];
        if (!x.is_number()) throw malformed("map entries must be numbers");
        d(r, c) = x.get<double>();
      }
    }
    complex.maps.push_back(std::move(d));
  }
  validate_complex(complex);
  return complex;
}

std::string serialize_complex(const NumericalComplex<double>& complex) {
  return complex_to_json(complex).dump();
}

NumericalComplex<double> parse_complex(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractViolation(std::string("complex document is not JSON: ") + e.what());
  }
  return complex_from_json(document);
}

}  // namespace chaincx
