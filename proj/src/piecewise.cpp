#include "piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace lambdabv {

IntervalFamily::IntervalFamily(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (size_t i = 1; i < intervals_.size(); ++i) {
    if (intervals_[i - 1].b > intervals_[i].a)
      throw std::invalid_argument("interval interiors overlap");
  }
}

PiecewiseFunction PiecewiseFunction::step(std::vector<Rational> breakpoints,
                                          std::vector<double> piece_values) {
  PiecewiseFunction f;
  if (breakpoints.size() < 2 || piece_values.size() + 1 != breakpoints.size())
    throw std::invalid_argument("step function needs one value per piece");
  f.breakpoints_ = std::move(breakpoints);
  f.left_values_ = piece_values;
  f.right_values_ = piece_values;
  f.point_values_ = piece_values;
  f.point_values_.push_back(piece_values.back());  // value at 1 is the last piece's
  f.validate_and_classify();
  return f;
}

PiecewiseFunction PiecewiseFunction::linear(std::vector<Rational> breakpoints,
                                            std::vector<double> node_values) {
  PiecewiseFunction f;
  if (breakpoints.size() < 2 || node_values.size() != breakpoints.size())
    throw std::invalid_argument("linear function needs one value per breakpoint");
  f.breakpoints_ = std::move(breakpoints);
  f.point_values_ = node_values;
  f.left_values_.assign(node_values.begin(), node_values.end() - 1);
  f.right_values_.assign(node_values.begin() + 1, node_values.end());
  f.validate_and_classify();
  return f;
}

PiecewiseFunction PiecewiseFunction::constant(double value) {
  return step({Rational(0), Rational(1)}, {value});
}

PiecewiseFunction PiecewiseFunction::regulated(std::vector<Rational> breakpoints,
                                               std::vector<double> point_values,
                                               std::vector<double> left_values,
                                               std::vector<double> right_values) {
  PiecewiseFunction f;
  if (breakpoints.size() < 2 || point_values.size() != breakpoints.size() ||
      left_values.size() + 1 != breakpoints.size() ||
      right_values.size() != left_values.size())
    throw std::invalid_argument("regulated function has inconsistent sizes");
  f.breakpoints_ = std::move(breakpoints);
  f.point_values_ = std::move(point_values);
  f.left_values_ = std::move(left_values);
  f.right_values_ = std::move(right_values);
  f.validate_and_classify();
  return f;
}

void PiecewiseFunction::validate_and_classify() {
  if (breakpoints_.front() != 0 || breakpoints_.back() != 1)
    throw std::invalid_argument("breakpoints must span [0,1]");
  for (size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i - 1] < breakpoints_[i]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  for (double v : point_values_)
    if (!std::isfinite(v)) throw std::invalid_argument("values must be finite");
  for (size_t k = 0; k < left_values_.size(); ++k)
    if (!std::isfinite(left_values_[k]) || !std::isfinite(right_values_[k]))
      throw std::invalid_argument("values must be finite");

  const size_t m = left_values_.size();
  bool is_step = true;
  for (size_t k = 0; k < m && is_step; ++k)
    is_step = left_values_[k] == right_values_[k] && point_values_[k] == left_values_[k];
  is_step = is_step && point_values_[m] == right_values_[m - 1];
  bool is_linear = true;
  for (size_t k = 0; k < m && is_linear; ++k)
    is_linear =
        left_values_[k] == point_values_[k] && right_values_[k] == point_values_[k + 1];
  kind_ = is_step ? FunctionKind::Step
                  : (is_linear ? FunctionKind::Linear : FunctionKind::Hybrid);
}

std::vector<double> PiecewiseFunction::step_values() const {
  if (kind_ != FunctionKind::Step)
    throw std::invalid_argument("not a step function");
  return left_values_;
}

std::vector<double> PiecewiseFunction::linear_values() const {
  if (kind_ != FunctionKind::Linear)
    throw std::invalid_argument("not a linear function");
  return point_values_;
}

size_t PiecewiseFunction::piece_index(const Rational& x) const {
  // Largest k with breakpoints_[k] <= x, clamped to a piece index.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  size_t k = static_cast<size_t>(it - breakpoints_.begin());
  if (k == 0) throw std::invalid_argument("point below domain");
  --k;
  if (k >= left_values_.size()) k = left_values_.size() - 1;  // x == 1
  return k;
}

double PiecewiseFunction::evaluate(const Rational& x) const {
  if (!in_unit_interval(x)) throw std::invalid_argument("evaluate: x outside [0,1]");
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it != breakpoints_.end() && *it == x)
    return point_values_[static_cast<size_t>(it - breakpoints_.begin())];
  const size_t k = piece_index(x);
  const double lo = left_values_[k], hi = right_values_[k];
  if (lo == hi) return lo;
  const Rational t = (x - breakpoints_[k]) / (breakpoints_[k + 1] - breakpoints_[k]);
  return lo + (hi - lo) * to_double(t);
}

double PiecewiseFunction::limit_right(const Rational& x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it != breakpoints_.end() && *it == x) {
    const size_t k = static_cast<size_t>(it - breakpoints_.begin());
    if (k >= left_values_.size()) throw std::invalid_argument("no right limit at 1");
    return left_values_[k];
  }
  return evaluate(x);  // interior of a piece: continuous there
}

double PiecewiseFunction::limit_left(const Rational& x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it != breakpoints_.end() && *it == x) {
    const size_t k = static_cast<size_t>(it - breakpoints_.begin());
    if (k == 0) throw std::invalid_argument("no left limit at 0");
    return right_values_[k - 1];
  }
  return evaluate(x);
}

double PiecewiseFunction::increment(const Interval& I) const {
  return evaluate(I.b) - evaluate(I.a);
}

double PiecewiseFunction::total_variation() const {
  // Walk the value path: point -> right limit -> left limit -> next point.
  double tv = 0.0;
  const size_t m = left_values_.size();
  for (size_t k = 0; k < m; ++k) {
    tv += std::abs(left_values_[k] - point_values_[k]);
    tv += std::abs(right_values_[k] - left_values_[k]);
    tv += std::abs(point_values_[k + 1] - right_values_[k]);
  }
  return tv;
}

double PiecewiseFunction::oscillation() const {
  double lo = point_values_[0], hi = point_values_[0];
  auto fold = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (double v : point_values_) fold(v);
  for (double v : left_values_) fold(v);
  for (double v : right_values_) fold(v);
  return hi - lo;
}

std::vector<Rational> PiecewiseFunction::candidate_grid() const {
  std::vector<Rational> grid;
  grid.reserve(2 * breakpoints_.size());
  for (size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
    grid.push_back(breakpoints_[k]);
    grid.push_back((breakpoints_[k] + breakpoints_[k + 1]) / 2);
  }
  grid.push_back(breakpoints_.back());
  return grid;
}

bool PiecewiseFunction::grid_attains_supremum() const {
  const size_t m = left_values_.size();
  for (size_t k = 0; k < m; ++k) {
    if (left_values_[k] == right_values_[k]) continue;  // constant pieces are safe
    const bool jump_in = left_values_[k] != point_values_[k];
    const bool jump_out = right_values_[k] != point_values_[k + 1];
    if (jump_in || jump_out) return false;
  }
  return true;
}

PiecewiseFunction PiecewiseFunction::scale_add(double alpha, const PiecewiseFunction& f,
                                               const PiecewiseFunction& g) {
  std::vector<Rational> merged;
  merged.reserve(f.breakpoints_.size() + g.breakpoints_.size());
  std::set_union(f.breakpoints_.begin(), f.breakpoints_.end(), g.breakpoints_.begin(),
                 g.breakpoints_.end(), std::back_inserter(merged));

  const size_t m = merged.size() - 1;
  std::vector<double> points(m + 1), lefts(m), rights(m);
  for (size_t k = 0; k <= m; ++k)
    points[k] = alpha * f.evaluate(merged[k]) + g.evaluate(merged[k]);
  for (size_t k = 0; k < m; ++k) {
    lefts[k] = alpha * f.limit_right(merged[k]) + g.limit_right(merged[k]);
    rights[k] = alpha * f.limit_left(merged[k + 1]) + g.limit_left(merged[k + 1]);
  }
  return regulated(std::move(merged), std::move(points), std::move(lefts),
                   std::move(rights));
}

bool PiecewiseFunction::operator==(const PiecewiseFunction& other) const {
  return kind_ == other.kind_ && breakpoints_ == other.breakpoints_ &&
         point_values_ == other.point_values_ && left_values_ == other.left_values_ &&
         right_values_ == other.right_values_;
}

}  // namespace lambdabv
