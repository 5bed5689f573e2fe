#include "lambdabv.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "harness.hpp"

using namespace lambdabv;

struct lbv_sequence {
  WatermanSequence rep;
};
struct lbv_function {
  PiecewiseFunction rep;
};
struct lbv_witness {
  WitnessSystem rep;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ failures onto status codes and stashes the message.
template <typename Fn>
lbv_status guarded(Fn&& fn) {
  try {
    fn();
    return LBV_OK;
  } catch (const NotSpikeClass& e) {
    g_last_error = e.what();
    return LBV_ERR_UNSUPPORTED;
  } catch (const Json::parse_error& e) {
    g_last_error = e.what();
    return LBV_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    const bool too_large = std::string(e.what()).find("too large") != std::string::npos;
    return too_large ? LBV_ERR_TOO_LARGE : LBV_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LBV_ERR_INTERNAL;
  }
}

Json variation_result_to_json(const VariationResult& r) {
  Json doc;
  doc["lower"] = r.lower;
  doc["upper"] = r.upper;
  switch (r.method) {
    case VariationMethod::Oracle: doc["method"] = "oracle"; break;
    case VariationMethod::SpikeExact: doc["method"] = "spike_exact"; break;
    case VariationMethod::Enclosure: doc["method"] = "enclosure"; break;
  }
  Json fam = Json::array();
  for (const auto& I : r.witness.intervals()) fam.push_back(interval_to_json(I));
  doc["family"] = std::move(fam);
  doc["note"] = r.truncation_note;
  return doc;
}

WitnessConfig witness_config_from_json(const Json& doc) {
  WitnessConfig config;
  config.seq = sequence_from_json(doc.at("sequence"));
  config.p = doc.at("p").get<double>();
  if (!(config.p > 1.0)) throw std::invalid_argument("witness config needs p > 1");
  config.q = doc.contains("q") ? doc.at("q").get<double>() : config.p / (config.p - 1.0);
  config.n_max = doc.contains("levels") ? doc.at("levels").get<int>() : 6;
  if (doc.contains("depth_r")) config.depth_r = doc.at("depth_r").get<long long>();
  return config;
}

Json functional_value_to_json(const FunctionalValue& v) {
  Json doc;
  doc["value"] = v.value;
  doc["tail_radius"] = v.tail_radius;
  doc["terms_used"] = v.terms_used;
  Json terms = Json::array();
  for (const auto& t : v.breakdown) {
    terms.push_back(Json{{"j", t.j},
                         {"i", t.i},
                         {"lambda_index", t.lambda_index},
                         {"f_increment", t.f_increment},
                         {"h_increment_abs", t.h_increment_abs},
                         {"signed_term", t.signed_term}});
  }
  doc["breakdown"] = std::move(terms);
  return doc;
}

}  // namespace

extern "C" {

const char* lbv_version(void) { return kLibraryVersion; }

const char* lbv_last_error(void) { return g_last_error.c_str(); }

void lbv_string_free(char* s) { std::free(s); }

lbv_status lbv_sequence_create(const char* descriptor_json, lbv_sequence** out) {
  if (!descriptor_json || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new lbv_sequence{make_sequence_from_json(descriptor_json)};
  });
}

void lbv_sequence_free(lbv_sequence* seq) { delete seq; }

lbv_status lbv_sequence_term(const lbv_sequence* seq, long long i, double* out) {
  if (!seq || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = seq->rep.term(i); });
}

lbv_status lbv_sequence_partial_sum(const lbv_sequence* seq, double r, double* out) {
  if (!seq || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = seq->rep.partial_sum(r); });
}

lbv_status lbv_sequence_validate(const lbv_sequence* seq, long long n_check,
                                 char** violations_json) {
  if (!seq || !violations_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Json arr = Json::array();
    for (const auto& v : seq->rep.validate(n_check))
      arr.push_back(Json{{"index", v.index}, {"kind", v.kind}, {"detail", v.detail}});
    *violations_json = dup_string(arr.dump());
  });
}

lbv_status lbv_function_parse(const char* document_json, lbv_function** out) {
  if (!document_json || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new lbv_function{parse_function(document_json)}; });
}

lbv_status lbv_function_serialize(const lbv_function* f, char** document_json) {
  if (!f || !document_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *document_json = dup_string(serialize_function(f->rep)); });
}

void lbv_function_free(lbv_function* f) { delete f; }

lbv_status lbv_function_evaluate(const lbv_function* f, const char* x, double* out) {
  if (!f || !x || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = f->rep.evaluate(parse_rational(x)); });
}

lbv_status lbv_function_increment(const lbv_function* f, const char* a, const char* b,
                                  double* out) {
  if (!f || !a || !b || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = f->rep.increment(Interval(parse_rational(a), parse_rational(b)));
  });
}

lbv_status lbv_function_total_variation(const lbv_function* f, double* out) {
  if (!f || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = f->rep.total_variation(); });
}

lbv_status lbv_function_oscillation(const lbv_function* f, double* out) {
  if (!f || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = f->rep.oscillation(); });
}

lbv_status lbv_function_scale_add(double alpha, const lbv_function* f,
                                  const lbv_function* g, lbv_function** out) {
  if (!f || !g || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new lbv_function{PiecewiseFunction::scale_add(alpha, f->rep, g->rep)};
  });
}

lbv_status lbv_variation(const lbv_function* f, const lbv_sequence* seq, double p,
                         const char* method, int max_intervals, int effort,
                         char** result_json) {
  if (!f || !seq || !method || !result_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::string m = method;
    VariationResult r;
    if (m == "brute")
      r = brute_force_variation(f->rep, seq->rep, p, max_intervals > 0 ? max_intervals : 6);
    else if (m == "spike")
      r = spike_exact(f->rep, seq->rep, p);
    else if (m == "enclosure")
      r = variation_enclosure(f->rep, seq->rep, p, effort > 0 ? effort : 12);
    else
      throw std::invalid_argument("unknown method '" + m + "'");
    *result_json = dup_string(variation_result_to_json(r).dump());
  });
}

lbv_status lbv_norm(const lbv_function* f, const lbv_sequence* seq, double p,
                    char** result_json) {
  if (!f || !seq || !result_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const NormEnclosure n = norm_enclosure(f->rep, seq->rep, p);
    *result_json = dup_string(Json{{"lower", n.lower}, {"upper", n.upper}}.dump());
  });
}

lbv_status lbv_witness_build(const char* config_json, lbv_witness** out) {
  if (!config_json || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new lbv_witness{WitnessSystem(witness_config_from_json(Json::parse(config_json)))};
  });
}

void lbv_witness_free(lbv_witness* w) { delete w; }

lbv_status lbv_witness_serialize(const lbv_witness* w, char** document_json) {
  if (!w || !document_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const WitnessSystem& sys = w->rep;
    Json doc;
    doc["config"] = Json{{"sequence", sequence_to_json(sys.config().seq)},
                         {"p", sys.config().p},
                         {"q", sys.config().q},
                         {"levels", sys.config().n_max},
                         {"depth_r", sys.config().effective_depth()}};
    doc["h"] = function_to_json(sys.h());
    Json heights = Json::array();
    for (int n = 2; n <= sys.config().n_max; ++n)
      heights.push_back(Json{{"level", n},
                             {"height", sys.height(n)},
                             {"spikes", sys.spikes_at_level(n)}});
    doc["heights"] = std::move(heights);
    Json r = Json::array();
    for (const auto& x : sys.r()) r.push_back(rational_to_string(x));
    doc["r"] = std::move(r);
    Json J = Json::array();
    for (long long i = 1; i <= sys.j_count(); ++i)
      J.push_back(interval_to_json(sys.J(i)));
    doc["J"] = std::move(J);
    doc["J_prime"] = interval_to_json(sys.j_prime());
    doc["h_tail_bound"] = sys.h_tail_bound();
    doc["vh_upper"] = sys.h_variation().upper;
    *document_json = dup_string(doc.dump());
  });
}

lbv_status lbv_witness_tent(const lbv_witness* w, long long l, int plateau_sign,
                            lbv_function** out) {
  if (!w || !out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new lbv_function{w->rep.tent(l, plateau_sign)}; });
}

lbv_status lbv_functional_evaluate(const lbv_witness* w, const char* selector,
                                   const lbv_function* f, long long j_max,
                                   char** result_json) {
  if (!w || !selector || !f || !result_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const SubsequenceSelector sel = selector_from_string(selector);
    long long depth = j_max;
    if (depth <= 0) depth = std::min<long long>(40, w->rep.j_count() / 2);
    const FunctionalValue v = evaluate_functional(sel, f->rep, w->rep, depth);
    *result_json = dup_string(functional_value_to_json(v).dump());
  });
}

lbv_status lbv_verify(const char* options_json, char** report_json, int* all_pass) {
  if (!options_json || !report_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const Json doc = Json::parse(options_json);
    VerifyOptions options;
    options.config = witness_config_from_json(doc);
    if (doc.contains("selector"))
      options.selector = selector_from_string(doc.at("selector").get<std::string>());
    if (doc.contains("s_max")) options.s_max = doc.at("s_max").get<long long>();
    if (doc.contains("seed")) options.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("sabotage")) {
      const std::string s = doc.at("sabotage").get<std::string>();
      if (s == "none")
        options.sabotage = Sabotage::None;
      else if (s == "heights-x50")
        options.sabotage = Sabotage::HeightsX50;
      else if (s == "shuffle-r")
        options.sabotage = Sabotage::ShuffleR;
      else
        throw std::invalid_argument("unknown sabotage '" + s + "'");
    }
    const VerificationReport report = verify_proof(options);
    *report_json = dup_string(report.to_json().dump(2));
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

lbv_status lbv_sweep(const char* grid_json, char** csv_out) {
  if (!grid_json || !csv_out) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *csv_out = dup_string(sweep_csv(sweep_grid_from_json(Json::parse(grid_json))));
  });
}

lbv_status lbv_fuzz(uint64_t seed, long long cases, int inject_pairing_bug,
                    char** stats_json, int* clean) {
  if (!stats_json) return LBV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const FuzzStats stats = fuzz_oracle(
        seed, cases, inject_pairing_bug ? FuzzBug::PermutedPairing : FuzzBug::None);
    *stats_json = dup_string(stats.to_json().dump(2));
    if (clean) *clean = stats.clean() ? 1 : 0;
  });
}

}  // extern "C"
