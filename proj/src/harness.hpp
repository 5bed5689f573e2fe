#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "functional.hpp"
#include "interchange.hpp"

namespace lambdabv {

enum class Sabotage { None, HeightsX50, ShuffleR };
enum class FuzzBug { None, PermutedPairing };

struct VerifyOptions {
  WitnessConfig config;
  SubsequenceSelector selector = SubsequenceSelector::identity();
  long long s_max = 8;
  std::uint64_t seed = 42;  // drives the random spot checks
  Sabotage sabotage = Sabotage::None;
};

struct CheckEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<=", ">", "==", "exact"
  double margin = 0.0;
  CheckStatus status = CheckStatus::Fail;
  std::string note;  // provenance of bounds and truncation error
};

struct VerificationReport {
  Json config_echo;
  std::vector<CheckEntry> checks;
  std::string version;
  double wall_ms = 0.0;

  bool all_pass() const;  // inconclusive counts as failure
  long long count(CheckStatus s) const;
  // Deterministic for fixed (config, seed) and independent of the thread
  // count; wall_ms is the only field excluded from that guarantee.
  Json to_json(bool include_wall_time = true) const;
};

// Runs the full pipeline: sequence validation, exact geometry, the variation
// bound on h, tent norms, functional norm/Hoelder checks, linearity spot
// checks, and the alternating witness values.
VerificationReport verify_proof(const VerifyOptions& options);

struct SweepGrid {
  std::vector<Json> sequences;  // descriptors
  std::vector<double> p_values;
  std::vector<int> depths;
  std::vector<std::string> selectors;  // "identity" | "evens" | "list:1,3,7"
  long long s_max = 4;
};
SweepGrid sweep_grid_from_json(const Json& doc);
// One CSV row per grid combination; '.' decimal, ',' separator, header row.
// Row order follows the grid. Per-row failures are recorded in the status
// column and the sweep continues.
std::string sweep_csv(const SweepGrid& grid);

SubsequenceSelector selector_from_string(const std::string& text);

struct FuzzViolation {
  long long case_index = 0;
  std::string property;
  double deviation = 0.0;
  Json reproducer;
};

struct FuzzStats {
  long long cases = 0;
  std::vector<FuzzViolation> violations;
  std::map<std::string, double> max_deviation;
  Json to_json() const;
  bool clean() const { return violations.empty(); }
};

// Random step/linear/spike functions (at most 6 pieces) against the
// exhaustive oracle: enclosure dominance and lower-bound agreement,
// spike-exact agreement, homogeneity, the triangle inequality, sorted-pairing
// optimality, lambda monotonicity, witness re-evaluation. Deterministic per
// seed; case specs are pre-generated sequentially and evaluated in parallel.
// FuzzBug::PermutedPairing deliberately mis-pairs the oracle's increments to
// prove the suite catches it.
FuzzStats fuzz_oracle(std::uint64_t seed, long long cases, FuzzBug bug = FuzzBug::None);

// One generated fuzz/spot-check case. The companion function shares the
// primary's breakpoints and kind so sums and mixtures stay exactly
// representable and oracle-friendly.
struct RandomCase {
  Json function;
  Json companion;
  Json sequence;
  double p = 2.0;
  double alpha = 1.0;
};
RandomCase generate_random_case(std::mt19937_64& rng);

extern const char* kLibraryVersion;

}  // namespace lambdabv
