#pragma once

#include <string>
#include <vector>

#include "witness.hpp"

namespace lambdabv {

// Strictly increasing index sequence (n_k) selecting which tent indices the
// functional alternates over. p(j) = 0 off the sequence, +1 at n_k for odd k,
// -1 at n_k for even k.
class SubsequenceSelector {
 public:
  static SubsequenceSelector identity();
  static SubsequenceSelector evens();  // n_k = 2k
  static SubsequenceSelector explicit_list(std::vector<long long> list);

  long long n(long long k) const;  // n_k, k >= 1
  // Largest usable k; unbounded rules report a large sentinel.
  long long max_k() const;
  int sign(long long j) const;  // p_{(n_k)}(j) in {-1, 0, +1}
  std::string describe() const;

 private:
  enum class Rule { Identity, Evens, Explicit } rule_ = Rule::Identity;
  std::vector<long long> list_;
};

// One evaluated functional with its certified truncation radius:
// |true value - value| <= tail_radius.
struct FunctionalValue {
  double value = 0.0;
  double tail_radius = 0.0;
  long long terms_used = 0;  // j summed through this index
  struct Term {
    long long j;
    int i;  // 1 or 2 within the block
    long long lambda_index;
    double f_increment;
    double h_increment_abs;
    double signed_term;
  };
  std::vector<Term> breakdown;  // the selected (sign != 0) blocks
};

// |h(J_i)| from the construction: J_i alternates between c-points (h = 0)
// and b-points (h = spike height), so the increment magnitude is the height
// of level ceil(i/2) + 1. Valid at any depth; within the built levels it is
// cross-checked against direct evaluation.
double h_increment_closed_form(const WitnessSystem& system, long long i);

// L(f) = f(J') + sum_j p(j) sum_{i=1,2} (-1)^i f(J_{2(j-1)+i}) |h(J_{2(j-1)+i})| / lambda_{2(j-1)+i}
// truncated at j_max, with tail certified via Hoelder on the remaining blocks:
// tail <= V_up(f) * (2 * 2^{-q(j_max+2)} / (1 - 2^-q))^{1/q}, using
// lambda_i >= 1 and Lambda(M_k) >= 1. v_upper_f must be a certified upper
// bound for V_{Lambda,p}(f); pass a negative value to have one computed.
FunctionalValue evaluate_functional(const SubsequenceSelector& sel,
                                    const PiecewiseFunction& f,
                                    const WitnessSystem& system, long long j_max,
                                    double v_upper_f = -1.0);

// Certified tail radius for a given truncation depth.
double functional_tail_radius(double v_upper_f, double q, long long j_max);

// V_up(f) * min(1, V_up(h) + tail(h)): dominates |L(f) - f(J')| + tail.
double hoelder_bound(const WitnessSystem& system, double v_upper_f);

struct NormCheckResult {
  double lhs = 0.0;  // |L(f)| + tail
  double rhs = 0.0;  // ||f||_up * (1 + ||h||_up + h tail)
  bool pass = false;
  double absolute_term_sum = 0.0;  // sum of |signed term| over computed blocks
  double hoelder = 0.0;
};
NormCheckResult functional_norm_check(const SubsequenceSelector& sel,
                                      const PiecewiseFunction& f,
                                      const WitnessSystem& system, long long j_max);

enum class CheckStatus { Pass, Inconclusive, Fail };

struct WitnessValue {
  long long s = 0;
  long long tent_index = 0;  // n_s
  int expected_sign = 0;     // (-1)^{s+1}
  FunctionalValue functional;
  double closed_form = 0.0;   // (-1)^{s+1} (1 + height_{l+1} (1/lambda_{2l-1} + 1/lambda_{2l}))
  double margin = 0.0;        // value * expected_sign - 1
  CheckStatus status = CheckStatus::Fail;
  bool closed_form_agrees = false;
  bool cancellation_exact = false;  // f(J_{2j-1}) = f(J_{2j}) = 0 for all computed j != n_s
  std::string note;
};

// Evaluates L(f_{n_s}) for s = 1..s_max (capped by the selector's depth),
// checking sign alternation with margin exceeding tail + 1e-10, closed-form
// agreement to 1e-10, and the term-by-term cancellation. Margins that are
// positive but not certifiably above the floor report Inconclusive, never
// Pass.
std::vector<WitnessValue> witness_values(const SubsequenceSelector& sel,
                                         const WitnessSystem& system, long long s_max);

// r depth needed so witness_values(s_max) can run with adaptive truncation.
long long required_r_depth(const SubsequenceSelector& sel, long long s_max, int n_max);

}  // namespace lambdabv
