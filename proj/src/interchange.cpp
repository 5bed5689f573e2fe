#include "interchange.hpp"

namespace lambdabv {

namespace {

Rational rational_from_json_value(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    // Binary64 values are exact rationals; used for custom-sequence prefixes
    // supplied as plain numbers.
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite number");
    int exp = 0;
    const double mant = std::frexp(d, &exp);
    const long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    return Rational(scaled) * pow2(exp - 53);
  }
  throw std::invalid_argument("expected rational as string or number");
}

}  // namespace

Json sequence_to_json(const WatermanSequence& seq) {
  Json doc;
  switch (seq.family()) {
    case SequenceFamily::Ones: doc["family"] = "ones"; break;
    case SequenceFamily::Linear: doc["family"] = "linear"; break;
    case SequenceFamily::Power:
      doc["family"] = "power";
      doc["alpha"] = seq.alpha();
      break;
    case SequenceFamily::Custom: {
      doc["family"] = "custom";
      Json prefix = Json::array();
      for (const auto& v : seq.prefix()) prefix.push_back(rational_to_string(v));
      doc["prefix"] = std::move(prefix);
      doc["tail"] = "constant";
      break;
    }
  }
  return doc;
}

WatermanSequence sequence_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("family"))
    throw std::invalid_argument("sequence descriptor needs a family");
  const std::string family = doc.at("family").get<std::string>();
  if (family == "ones") return WatermanSequence::ones();
  if (family == "linear") return WatermanSequence::linear();
  if (family == "power") {
    if (!doc.contains("alpha"))
      throw std::invalid_argument("power family needs alpha");
    return WatermanSequence::power(doc.at("alpha").get<double>());
  }
  if (family == "custom") {
    if (!doc.contains("prefix") || !doc.at("prefix").is_array())
      throw std::invalid_argument("custom family needs a prefix array");
    if (doc.contains("tail") && doc.at("tail").get<std::string>() != "constant")
      throw std::invalid_argument("only the constant tail rule is supported");
    std::vector<Rational> prefix;
    for (const auto& v : doc.at("prefix")) prefix.push_back(rational_from_json_value(v));
    return WatermanSequence::custom(std::move(prefix));
  }
  throw std::invalid_argument("unknown sequence family '" + family + "'");
}

WatermanSequence make_sequence_from_json(const std::string& descriptor_json) {
  return sequence_from_json(Json::parse(descriptor_json));
}

Json function_to_json(const PiecewiseFunction& f) {
  Json doc;
  Json bps = Json::array();
  for (const auto& x : f.breakpoints()) bps.push_back(rational_to_string(x));
  if (f.kind() == FunctionKind::Step) {
    doc["kind"] = "step";
    doc["breakpoints"] = std::move(bps);
    doc["values"] = f.step_values();
  } else if (f.kind() == FunctionKind::Linear) {
    doc["kind"] = "linear";
    doc["breakpoints"] = std::move(bps);
    doc["values"] = f.linear_values();
  } else {
    throw std::invalid_argument(
        "hybrid functions (jumps mixed with affine pieces) have no interchange form");
  }
  return doc;
}

PiecewiseFunction function_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("function document must be an object");
  for (const char* key : {"kind", "breakpoints", "values"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("function document missing '") + key + "'");
  const std::string kind = doc.at("kind").get<std::string>();
  std::vector<Rational> breakpoints;
  for (const auto& v : doc.at("breakpoints")) {
    if (!v.is_string())
      throw std::invalid_argument("breakpoints must be rational strings");
    breakpoints.push_back(parse_rational(v.get<std::string>()));
  }
  std::vector<double> values;
  for (const auto& v : doc.at("values")) {
    if (!v.is_number()) throw std::invalid_argument("values must be numbers");
    values.push_back(v.get<double>());
  }
  if (kind == "step") return PiecewiseFunction::step(std::move(breakpoints), std::move(values));
  if (kind == "linear")
    return PiecewiseFunction::linear(std::move(breakpoints), std::move(values));
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

std::string serialize_function(const PiecewiseFunction& f) {
  return function_to_json(f).dump();
}

PiecewiseFunction parse_function(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed function document: ") + e.what());
  }
  return function_from_json(doc);
}

Json interval_to_json(const Interval& I) {
  return Json::array({rational_to_string(I.a), rational_to_string(I.b)});
}

Interval interval_from_json(const Json& doc) {
  if (!doc.is_array() || doc.size() != 2)
    throw std::invalid_argument("interval must be a two-element array");
  return Interval(parse_rational(doc.at(0).get<std::string>()),
                  parse_rational(doc.at(1).get<std::string>()));
}

}  // namespace lambdabv
