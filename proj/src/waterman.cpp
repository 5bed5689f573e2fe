#include "waterman.hpp"

#include <algorithm>
#include <cmath>

namespace lambdabv {

namespace {

constexpr long long kExactMax = 4096;        // exact rational prefix sums up to here
constexpr long long kBlock = 1 << 20;        // checkpoint spacing for direct summation
constexpr long long kDirectMax = 1ll << 27;  // direct summation range
constexpr double kEulerGamma = 0.57721566490153286060651209;

void neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}

}  // namespace

WatermanSequence WatermanSequence::ones() {
  WatermanSequence s;
  s.family_ = SequenceFamily::Ones;
  return s;
}

WatermanSequence WatermanSequence::linear() {
  WatermanSequence s;
  s.family_ = SequenceFamily::Linear;
  return s;
}

WatermanSequence WatermanSequence::power(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument(
        "power family requires 0 < alpha <= 1 (reciprocal sum must diverge)");
  WatermanSequence s;
  s.family_ = SequenceFamily::Power;
  s.alpha_ = alpha;
  return s;
}

WatermanSequence WatermanSequence::custom(std::vector<Rational> prefix) {
  if (prefix.empty()) throw std::invalid_argument("custom sequence needs a nonempty prefix");
  if (prefix.front() != 1)
    throw std::invalid_argument("lambda_1 must equal 1 (normalization)");
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] <= 0)
      throw std::invalid_argument("lambda_" + std::to_string(i + 1) + " is not positive");
    if (i > 0 && prefix[i] < prefix[i - 1])
      throw std::invalid_argument("prefix decreases at i=" + std::to_string(i + 1));
  }
  return custom_unchecked(std::move(prefix));
}

WatermanSequence WatermanSequence::custom_unchecked(std::vector<Rational> prefix) {
  if (prefix.empty()) throw std::invalid_argument("custom sequence needs a nonempty prefix");
  WatermanSequence s;
  s.family_ = SequenceFamily::Custom;
  s.prefix_ = std::move(prefix);
  return s;
}

double WatermanSequence::term(long long i) const {
  if (i < 1) throw std::invalid_argument("term index must be >= 1");
  switch (family_) {
    case SequenceFamily::Ones: return 1.0;
    case SequenceFamily::Linear: return static_cast<double>(i);
    case SequenceFamily::Power: return std::pow(static_cast<double>(i), alpha_);
    case SequenceFamily::Custom: {
      const size_t idx = static_cast<size_t>(i - 1);
      return to_double(idx < prefix_.size() ? prefix_[idx] : prefix_.back());
    }
  }
  throw std::logic_error("unreachable");
}

Rational WatermanSequence::term_exact(long long i) const {
  if (i < 1) throw std::invalid_argument("term index must be >= 1");
  switch (family_) {
    case SequenceFamily::Ones: return Rational(1);
    case SequenceFamily::Linear: return Rational(i);
    case SequenceFamily::Power:
      throw std::invalid_argument("power family has no exact terms");
    case SequenceFamily::Custom: {
      const size_t idx = static_cast<size_t>(i - 1);
      return idx < prefix_.size() ? prefix_[idx] : prefix_.back();
    }
  }
  throw std::logic_error("unreachable");
}

bool WatermanSequence::has_exact_partial_sum(long long n) const {
  if (family_ == SequenceFamily::Ones || family_ == SequenceFamily::Custom) return true;
  return family_ == SequenceFamily::Linear && n <= kExactMax;
}

Rational WatermanSequence::partial_sum_exact(long long n) const {
  if (n < 1) throw std::invalid_argument("partial sum requires n >= 1");
  if (family_ == SequenceFamily::Ones) return Rational(n);
  if (family_ == SequenceFamily::Custom) {
    // Constant tail makes the whole sum a closed form past the prefix.
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& sums = memo_->exact_prefix_sums;
    const long long len = static_cast<long long>(prefix_.size());
    while (static_cast<long long>(sums.size()) < std::min(n, len)) {
      const Rational next = Rational(1) / prefix_[sums.size()];
      sums.push_back(sums.empty() ? next : sums.back() + next);
    }
    if (n <= len) return sums[static_cast<size_t>(n - 1)];
    return sums.back() + Rational(n - len) / prefix_.back();
  }
  if (family_ == SequenceFamily::Linear) {
    if (n > kExactMax)
      throw std::invalid_argument("exact harmonic sum limited to n <= " +
                                  std::to_string(kExactMax));
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& sums = memo_->exact_prefix_sums;
    while (static_cast<long long>(sums.size()) < n) {
      const Rational next(1, static_cast<long long>(sums.size()) + 1);
      sums.push_back(sums.empty() ? next : sums.back() + next);
    }
    return sums[static_cast<size_t>(n - 1)];
  }
  throw std::invalid_argument("power family has no exact partial sums");
}

double WatermanSequence::direct_sum(long long n) const {
  // Deterministic: checkpoints are filled in order once; the tail of the
  // block is resummed per query, which is idempotent.
  std::pair<double, double> base{0.0, 0.0};
  long long start = 0;
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& cps = memo_->checkpoints;
    if (cps.empty()) cps.emplace_back(0.0, 0.0);
    while (static_cast<long long>(cps.size() - 1) * kBlock + kBlock <= n) {
      auto [sum, comp] = cps.back();
      const long long from = static_cast<long long>(cps.size() - 1) * kBlock;
      for (long long i = from + 1; i <= from + kBlock; ++i)
        neumaier_add(sum, comp, 1.0 / term(i));
      cps.emplace_back(sum, comp);
    }
    const size_t cp_index = static_cast<size_t>(n / kBlock);
    base = cps[cp_index];
    start = static_cast<long long>(cp_index) * kBlock;
  }
  auto [sum, comp] = base;
  for (long long i = start + 1; i <= n; ++i) neumaier_add(sum, comp, 1.0 / term(i));
  return sum + comp;
}

SumBounds WatermanSequence::asymptotic_bounds(double n) const {
  // Beyond the direct range. n arrives as an exact double (power-of-two
  // capacities); floor adjustments are below double resolution there.
  if (family_ == SequenceFamily::Linear || (family_ == SequenceFamily::Power && alpha_ == 1.0)) {
    // DeTemple sandwich: ln n + gamma + 1/(2(n+1)) < H_n < ln n + gamma + 1/(2n).
    const double base = std::log(n) + kEulerGamma;
    return {base + 1.0 / (2.0 * (n + 1.0)) - 1e-12, base + 1.0 / (2.0 * n) + 1e-12};
  }
  if (family_ == SequenceFamily::Power) {
    // Integral sandwich for the decreasing integrand x^-alpha.
    const double one_minus = 1.0 - alpha_;
    const double lo = (std::pow(n + 1.0, one_minus) - 1.0) / one_minus;
    const double hi = 1.0 + (std::pow(n, one_minus) - 1.0) / one_minus;
    return {lo * (1.0 - 1e-12), hi * (1.0 + 1e-12)};
  }
  throw std::logic_error("asymptotic_bounds: exact family");
}

SumBounds WatermanSequence::partial_sum_bounds(double r) const {
  if (!(r >= 1.0)) throw std::invalid_argument("partial sum requires r >= 1");
  const double nf = std::floor(r);
  if (family_ == SequenceFamily::Ones) return {nf, nf};
  if (family_ == SequenceFamily::Custom) {
    const double v = to_double(partial_sum_exact(static_cast<long long>(std::min(
        nf, static_cast<double>(1ll << 62)))));
    // Custom tails are constant, so the closed form above covers any depth
    // that fits in an integer; beyond 2^62 extend linearly in double.
    if (nf <= static_cast<double>(1ll << 62)) return {v, v};
    const double extra = (nf - static_cast<double>(1ll << 62)) / to_double(prefix_.back());
    return {(v + extra) * (1 - 1e-12), (v + extra) * (1 + 1e-12)};
  }
  if (nf <= static_cast<double>(kExactMax) && family_ == SequenceFamily::Linear) {
    const double v = to_double(partial_sum_exact(static_cast<long long>(nf)));
    return {v, v};
  }
  if (nf <= static_cast<double>(kDirectMax)) {
    const double v = direct_sum(static_cast<long long>(nf));
    // Neumaier summation is faithfully rounded; 1e-12 absolute is generous.
    return {v - 1e-12, v + 1e-12};
  }
  return asymptotic_bounds(nf);
}

double WatermanSequence::partial_sum(double r) const {
  return partial_sum_bounds(r).mid();
}

double WatermanSequence::partial_sum_upper(double r) const {
  return partial_sum_bounds(r).upper;
}

std::vector<SequenceViolation> WatermanSequence::validate(long long n_check) const {
  if (n_check < 1) throw std::invalid_argument("n_check must be >= 1");
  std::vector<SequenceViolation> out;
  if (has_exact_terms()) {
    if (term_exact(1) != 1)
      out.push_back({1, "first_term", "lambda_1 = " + rational_to_string(term_exact(1)) +
                            ", expected 1"});
    Rational prev = term_exact(1);
    if (prev <= 0) out.push_back({1, "nonpositive", "lambda_1 <= 0"});
    for (long long i = 2; i <= n_check; ++i) {
      const Rational cur = term_exact(i);
      if (cur <= 0)
        out.push_back({i, "nonpositive", "lambda_" + std::to_string(i) + " <= 0"});
      if (cur < prev)
        out.push_back({i, "decreasing", "lambda_" + std::to_string(i) + " < lambda_" +
                              std::to_string(i - 1)});
      prev = cur;
      // Constant tails cannot add new violations.
      if (family_ == SequenceFamily::Custom &&
          i >= static_cast<long long>(prefix_.size()) + 1)
        break;
    }
  } else {
    if (term(1) != 1.0) out.push_back({1, "first_term", "lambda_1 != 1"});
    // i^alpha with alpha in (0,1] is positive and nondecreasing by construction.
  }
  return out;
}

std::string WatermanSequence::describe() const {
  switch (family_) {
    case SequenceFamily::Ones: return "ones";
    case SequenceFamily::Linear: return "linear";
    case SequenceFamily::Power: return "power(" + std::to_string(alpha_) + ")";
    case SequenceFamily::Custom: {
      std::string s = "custom[";
      for (size_t i = 0; i < prefix_.size(); ++i) {
        if (i) s += ",";
        s += rational_to_string(prefix_[i]);
      }
      return s + "]+constant";
    }
  }
  return "?";
}

}  // namespace lambdabv
