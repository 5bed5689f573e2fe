#pragma once

#include <string>

#include <json.hpp>

#include "piecewise.hpp"
#include "waterman.hpp"

namespace lambdabv {

using Json = nlohmann::ordered_json;

// Interchange documents. Rationals travel as exact "num/den" strings
// (integers without the "/1"); function values as JSON numbers.

Json sequence_to_json(const WatermanSequence& seq);
WatermanSequence sequence_from_json(const Json& doc);

// {"kind":"step"|"linear","breakpoints":["0","1/4",...,"1"],"values":[...]}
// Hybrid functions are internal-only and refuse to serialize.
Json function_to_json(const PiecewiseFunction& f);
PiecewiseFunction function_from_json(const Json& doc);

std::string serialize_function(const PiecewiseFunction& f);
PiecewiseFunction parse_function(const std::string& text);

Json interval_to_json(const Interval& I);
Interval interval_from_json(const Json& doc);

}  // namespace lambdabv
