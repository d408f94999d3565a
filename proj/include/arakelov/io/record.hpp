#pragma once

#include "arakelov/divisor/divisor.hpp"
#include "arakelov/zariski/zariski.hpp"

#include "json.hpp"

#include <string>

namespace arakelov::io {

using json = nlohmann::json;

/// {d, coeffs, potential: {kind: "canonical", a} | {kind: "canonical-sum", terms: [{weight, a}]}
///  | {kind: "sampled", s_min, s_max, values}, twist}. Sampled values are row-major
/// on a square grid in d = 2.
json divisor_record(const divisor::ToricArithDivisor& D);
divisor::ToricArithDivisor parse_divisor(const json& record);

/// the sampled divisor record plus {vertical: {p: gamma}}
json surface_record(const zariski::RotInvariantDivisor& D);
zariski::RotInvariantDivisor parse_surface(const json& record);

/// "[center:]kind:index:value" with kind hyperplane | point | fiber
divisor::BaseCondition parse_condition(const std::string& text);
std::string condition_text(const divisor::BaseCondition& xi);

/// rounds to 12 significant digits so that dumps are reproducible byte for byte
double round12(double v);
json rounded(const json& j);

} // namespace arakelov::io
