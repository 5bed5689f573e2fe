// lambda-bv: command-line front end over the shared-library C API.
//
//   lambda-bv verify    --sequence ones --p 2 --levels 6 --selector identity \
//                       --s-max 8 --report out.json
//   lambda-bv variation --function f.json --sequence linear --p 2 --method brute
//   lambda-bv witness   build --levels 6 --p 2 --sequence ones --out w.json
//   lambda-bv sweep     --grid grid.json --csv out.csv
//   lambda-bv fuzz      --seed 42 --cases 200
//
// Sequences: ones | linear | power:<alpha> | custom:<file.json>.
// LAMBDA_BV_THREADS caps worker threads.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lambdabv.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write file: " + path);
  out << content;
}

std::string sequence_descriptor(const std::string& arg) {
  if (arg == "ones") return R"({"family":"ones"})";
  if (arg == "linear") return R"({"family":"linear"})";
  if (arg.rfind("power:", 0) == 0)
    return std::string(R"({"family":"power","alpha":)") + arg.substr(6) + "}";
  if (arg.rfind("custom:", 0) == 0) return read_file(arg.substr(7));
  throw CLI::ValidationError("sequence must be ones|linear|power:a|custom:file");
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { lbv_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int fail(lbv_status status) {
  std::cerr << "error (" << status << "): " << lbv_last_error() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified p-Lambda-variation and witness verification"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
  std::string v_sequence = "ones", v_selector = "identity", v_report, v_sabotage = "none";
  double v_p = 2.0;
  int v_levels = 6;
  long long v_smax = 8;
  std::uint64_t v_seed = 42;
  verify->add_option("--sequence", v_sequence, "ones|linear|power:a|custom:file");
  verify->add_option("--p", v_p, "variation exponent (> 1)");
  verify->add_option("--levels", v_levels, "spike levels to materialize");
  verify->add_option("--selector", v_selector, "identity|evens|list:1,3,7");
  verify->add_option("--s-max", v_smax, "witness values to check");
  verify->add_option("--seed", v_seed, "seed for random spot checks");
  verify->add_option("--report", v_report, "write the JSON report here");
  verify->add_option("--sabotage", v_sabotage,
                     "none|heights-x50|shuffle-r (negative-control hooks)");

  // variation
  auto* variation = app.add_subcommand("variation", "variation of one function");
  std::string var_function, var_sequence = "ones", var_method = "enclosure";
  double var_p = 2.0;
  int var_max_intervals = 6, var_effort = 12;
  variation->add_option("--function", var_function, "function JSON file")->required();
  variation->add_option("--sequence", var_sequence, "ones|linear|power:a|custom:file");
  variation->add_option("--p", var_p, "variation exponent (>= 1)");
  variation->add_option("--method", var_method, "brute|spike|enclosure");
  variation->add_option("--max-intervals", var_max_intervals, "family size cap (brute)");
  variation->add_option("--effort", var_effort, "local-search rounds (enclosure)");

  // witness build
  auto* witness = app.add_subcommand("witness", "witness system tools");
  auto* build = witness->add_subcommand("build", "materialize and export the system");
  std::string w_sequence = "ones", w_out;
  double w_p = 2.0;
  int w_levels = 6;
  long long w_depth = 0;
  build->add_option("--levels", w_levels, "spike levels to materialize");
  build->add_option("--p", w_p, "variation exponent (> 1)");
  build->add_option("--sequence", w_sequence, "ones|linear|power:a|custom:file");
  build->add_option("--depth-r", w_depth, "r points to emit (0 = default)");
  build->add_option("--out", w_out, "output JSON path (default: stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  std::string s_grid, s_csv;
  sweep->add_option("--grid", s_grid, "grid JSON file")->required();
  sweep->add_option("--csv", s_csv, "output CSV path (default: stdout)");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "oracle fuzzing");
  std::uint64_t f_seed = 42;
  long long f_cases = 200;
  bool f_inject = false;
  fuzz->add_option("--seed", f_seed, "generator seed");
  fuzz->add_option("--cases", f_cases, "number of cases (>= 1)");
  fuzz->add_flag("--inject-pairing-bug", f_inject,
                 "negative control: mis-pair increments on purpose");

  CLI11_PARSE(app, argc, argv);

  if (*verify) {
    std::ostringstream options;
    options << "{\"sequence\":" << sequence_descriptor(v_sequence) << ",\"p\":" << v_p
            << ",\"levels\":" << v_levels << ",\"selector\":\"" << v_selector
            << "\",\"s_max\":" << v_smax << ",\"seed\":" << v_seed << ",\"sabotage\":\""
            << v_sabotage << "\"}";
    OwnedString report;
    int all_pass = 0;
    const lbv_status st = lbv_verify(options.str().c_str(), &report.ptr, &all_pass);
    if (st != LBV_OK) return fail(st);
    if (!v_report.empty())
      write_file(v_report, report.str());
    else
      std::cout << report.str() << "\n";
    std::cerr << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    return all_pass ? 0 : 1;
  }

  if (*variation) {
    lbv_function* f = nullptr;
    lbv_sequence* seq = nullptr;
    lbv_status st = lbv_function_parse(read_file(var_function).c_str(), &f);
    if (st != LBV_OK) return fail(st);
    st = lbv_sequence_create(sequence_descriptor(var_sequence).c_str(), &seq);
    if (st != LBV_OK) return fail(st);
    OwnedString result;
    st = lbv_variation(f, seq, var_p, var_method.c_str(), var_max_intervals, var_effort,
                       &result.ptr);
    lbv_function_free(f);
    lbv_sequence_free(seq);
    if (st != LBV_OK) return fail(st);
    std::cout << result.str() << "\n";
    return 0;
  }

  if (*witness) {
    if (!*build) {
      std::cerr << "usage: lambda-bv witness build ...\n";
      return 2;
    }
    std::ostringstream config;
    config << "{\"sequence\":" << sequence_descriptor(w_sequence) << ",\"p\":" << w_p
           << ",\"levels\":" << w_levels << ",\"depth_r\":" << w_depth << "}";
    lbv_witness* w = nullptr;
    lbv_status st = lbv_witness_build(config.str().c_str(), &w);
    if (st != LBV_OK) return fail(st);
    OwnedString doc;
    st = lbv_witness_serialize(w, &doc.ptr);
    lbv_witness_free(w);
    if (st != LBV_OK) return fail(st);
    if (!w_out.empty())
      write_file(w_out, doc.str());
    else
      std::cout << doc.str() << "\n";
    return 0;
  }

  if (*sweep) {
    OwnedString csv;
    const lbv_status st = lbv_sweep(read_file(s_grid).c_str(), &csv.ptr);
    if (st != LBV_OK) return fail(st);
    if (!s_csv.empty())
      write_file(s_csv, csv.str());
    else
      std::cout << csv.str();
    return 0;
  }

  if (*fuzz) {
    OwnedString stats;
    int clean = 0;
    const lbv_status st = lbv_fuzz(f_seed, f_cases, f_inject ? 1 : 0, &stats.ptr, &clean);
    if (st != LBV_OK) return fail(st);
    std::cout << stats.str() << "\n";
    std::cerr << (clean ? "no violations" : "VIOLATIONS FOUND") << "\n";
    return clean ? 0 : 1;
  }

  return 2;
}
