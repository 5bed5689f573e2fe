#pragma once

#include <vector>

#include "rational.hpp"

namespace lambdabv {

// Closed interval [a, b] in [0,1] with a < b. Increment convention:
// f(I) = f(b) - f(a).
struct Interval {
  Rational a;
  Rational b;
  Interval(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    if (!(in_unit_interval(a) && in_unit_interval(b)))
      throw std::invalid_argument("interval endpoints must lie in [0,1]");
    if (!(a < b)) throw std::invalid_argument("interval needs a < b");
  }
};

// Finite family of closed intervals with pairwise disjoint interiors
// (shared endpoints allowed), kept sorted by left endpoint.
class IntervalFamily {
 public:
  IntervalFamily() = default;
  explicit IntervalFamily(std::vector<Interval> intervals);
  const std::vector<Interval>& intervals() const { return intervals_; }
  size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<Interval> intervals_;
};

enum class FunctionKind { Step, Linear, Hybrid };

// Piecewise function on [0,1] with exact rational breakpoints and binary64
// values. Two interchange kinds exist:
//   step   — left-closed right-open constant pieces [x_k, x_{k+1}); the value
//            at x = 1 belongs to the last piece
//   linear — continuous, affine between breakpoint values
// Internally the representation is regulated: each breakpoint carries its
// point value and each open piece carries one-sided limit values with affine
// interpolation between them. That closes step/linear under scale_add and
// admits the tent-plus-plateau witness functions, which are step-like on one
// part of the domain and affine on another (kind Hybrid, not serializable).
class PiecewiseFunction {
 public:
  static PiecewiseFunction step(std::vector<Rational> breakpoints,
                                std::vector<double> piece_values);
  static PiecewiseFunction linear(std::vector<Rational> breakpoints,
                                  std::vector<double> node_values);
  static PiecewiseFunction constant(double value);
  static PiecewiseFunction regulated(std::vector<Rational> breakpoints,
                                     std::vector<double> point_values,
                                     std::vector<double> left_values,
                                     std::vector<double> right_values);

  FunctionKind kind() const { return kind_; }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& point_values() const { return point_values_; }
  const std::vector<double>& left_values() const { return left_values_; }
  const std::vector<double>& right_values() const { return right_values_; }
  size_t piece_count() const { return left_values_.size(); }

  // Step piece values / linear node values (throws on kind mismatch).
  std::vector<double> step_values() const;
  std::vector<double> linear_values() const;

  double evaluate(const Rational& x) const;
  double increment(const Interval& I) const;  // f(b) - f(a)
  double total_variation() const;
  double oscillation() const;  // max f - min f over [0,1]

  // Breakpoints plus every piece midpoint, strictly increasing. For step and
  // linear functions (and hybrids whose jumps only border constant pieces)
  // interval families restricted to this grid attain the variation supremum.
  std::vector<Rational> candidate_grid() const;

  // True when the candidate grid certifies the supremum: no jump lands next
  // to a non-constant piece whose one-sided limit is approached but never
  // attained.
  bool grid_attains_supremum() const;

  // (alpha*f + g) computed exactly on the merged breakpoint grid, pointwise
  // everywhere (point values and one-sided limits alike).
  static PiecewiseFunction scale_add(double alpha, const PiecewiseFunction& f,
                                     const PiecewiseFunction& g);

  bool operator==(const PiecewiseFunction& other) const;

 private:
  PiecewiseFunction() = default;
  void validate_and_classify();
  // One-sided limits at arbitrary exact points.
  double limit_right(const Rational& x) const;  // lim_{t -> x+} f(t), x < 1
  double limit_left(const Rational& x) const;   // lim_{t -> x-} f(t), x > 0
  size_t piece_index(const Rational& x) const;  // piece whose closure holds x

  std::vector<Rational> breakpoints_;
  std::vector<double> point_values_;
  std::vector<double> left_values_;
  std::vector<double> right_values_;
  FunctionKind kind_ = FunctionKind::Step;
};

}  // namespace lambdabv
