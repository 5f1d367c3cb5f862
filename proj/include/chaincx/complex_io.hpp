// JSON form of a numerical complex:
//
//   {"dims": [a_0, ..., a_n],
//    "maps": [[row-major entries of D_1], ..., [row-major entries of D_n]],
//    "tolerance": composition_tolerance}
//
// Doubles are written in shortest round-trip form, so parse(serialize(c))
// reproduces every entry bit for bit.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "chaincx/numerics.hpp"

namespace chaincx {

nlohmann::json complex_to_json(const NumericalComplex<double>& complex);

/// Throws ContractViolation on malformed documents and DomainError when the
/// maps violate the chain condition.
NumericalComplex<double> complex_from_json(const nlohmann::json& document);

std::string serialize_complex(const NumericalComplex<double>& complex);
NumericalComplex<double> parse_complex(const std::string& text);

}  // namespace chaincx
