#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rational.hpp"

namespace lambdabv {

enum class SequenceFamily { Ones, Linear, Power, Custom };

struct SequenceViolation {
  long long index = 0;  // 1-based lambda index the violation refers to
  std::string kind;     // "nonpositive" | "decreasing" | "first_term"
  std::string detail;
};

// Certified bracket for a partial sum; lower == upper on exact paths.
struct SumBounds {
  double lower = 0.0;
  double upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
  double radius() const { return 0.5 * (upper - lower); }
};

// A nondecreasing positive weight sequence (lambda_i) with lambda_1 = 1 and
// divergent reciprocal sum. Divergence is guaranteed by construction for the
// built-in families and recorded as a declared assumption for custom
// sequences (a finite prefix cannot certify it).
//
// Immutable after construction except for the partial-sum memo, which is
// internally synchronized and behaves as-if-pure.
class WatermanSequence {
 public:
  static WatermanSequence ones();
  static WatermanSequence linear();
  static WatermanSequence power(double alpha);  // lambda_i = i^alpha, 0 < alpha <= 1
  static WatermanSequence custom(std::vector<Rational> prefix);  // constant tail
  // Skips the construction-time checks so validate() has something to report.
  static WatermanSequence custom_unchecked(std::vector<Rational> prefix);

  SequenceFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  const std::vector<Rational>& prefix() const { return prefix_; }

  // lambda_i; exact for ones/linear/custom, pow(i, alpha) for power.
  double term(long long i) const;
  bool has_exact_terms() const { return family_ != SequenceFamily::Power; }
  Rational term_exact(long long i) const;

  // Lambda(r) = sum_{i=1}^{floor(r)} 1/lambda_i, r >= 1. Memoized; identical
  // results across calls and threads for the same r. For depths beyond the
  // direct-summation range the value falls back to certified closed-form
  // brackets (see partial_sum_bounds); the midpoint is returned here.
  double partial_sum(double r) const;

  // Certified [lower, upper] for Lambda(r). Exact paths return a zero-width
  // bracket up to a documented 1e-12 summation slack.
  SumBounds partial_sum_bounds(double r) const;

  // Always-valid upper bound for Lambda(r), usable at any depth for every
  // family (monotonicity + integral/telescoping estimates).
  double partial_sum_upper(double r) const;

  // Exact rational Lambda(n); available for small n on exact families.
  Rational partial_sum_exact(long long n) const;
  bool has_exact_partial_sum(long long n) const;

  // First n_check terms: positivity, monotonicity, lambda_1 = 1.
  std::vector<SequenceViolation> validate(long long n_check) const;

  std::string describe() const;

 private:
  WatermanSequence() = default;

  SequenceFamily family_ = SequenceFamily::Ones;
  double alpha_ = 1.0;
  std::vector<Rational> prefix_;  // custom only; lambda_i = prefix.back() beyond

  // Memo state shared by copies of the same sequence.
  struct Memo {
    std::mutex mutex;
    std::vector<Rational> exact_prefix_sums;  // exact_prefix_sums[n-1] = Lambda(n)
    // Compensated-summation checkpoints every kBlock terms: (sum, compensation).
    std::vector<std::pair<double, double>> checkpoints;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

  double direct_sum(long long n) const;  // checkpointed compensated summation
  SumBounds asymptotic_bounds(double n) const;
};

WatermanSequence make_sequence_from_json(const std::string& descriptor_json);

}  // namespace lambdabv
