#include "witness.hpp"

#include <cmath>

namespace lambdabv {

void WitnessConfig::validate() const {
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2 (level 1 is zero)");
  if (n_max > 8)
    throw std::invalid_argument(
        "n_max > 8 would materialize more than 2^22 spike pieces; deeper levels "
        "are reached through the closed-form heights instead");
  if (!(p > 1.0)) throw std::invalid_argument("witness construction requires p > 1");
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-14)
    throw std::invalid_argument("p and q must be conjugate: 1/p + 1/q = 1");
  if (depth_r < 0 || depth_r == 1)
    throw std::invalid_argument("depth_r must be 0 (default) or >= 2");
}

BigInt level_capacity_big(int n) {
  if (n < 2) throw std::invalid_argument("levels start at n = 2");
  return BigInt(1) << (3 * n - 1);
}

long long level_capacity(int n) {
  if (n > 21) throw std::invalid_argument("level capacity exceeds 2^62; use the wide variant");
  return level_capacity_big(n).convert_to<long long>();
}

BigInt last_spike_index(int n) { return (level_capacity_big(n) - 2) / 2; }

SpikeCell grid_points(int n, const BigInt& j) {
  if (n < 2) throw std::invalid_argument("levels start at n = 2");
  if (j < 1 || j > last_spike_index(n))
    throw std::invalid_argument("spike index out of range for level " + std::to_string(n));
  const Rational den = pow2(4 * n);
  const Rational base = pow2(-n);
  SpikeCell cell{base + Rational(2 * j - 2) / den, base + Rational(2 * j - 1) / den};
  return cell;
}

SpikeCell grid_points(int n, long long j) { return grid_points(n, BigInt(j)); }

namespace {

// r_{2k} = c at level k+2 (last spike), r_{2k+1} = b at level k+2.
Rational r_point(long long i) {
  const long long k = i / 2;
  const int level = static_cast<int>(k) + 2;
  const SpikeCell cell = grid_points(level, last_spike_index(level));
  return (i % 2 == 0) ? cell.c : cell.b;
}

}  // namespace

WitnessSystem::WitnessSystem(WitnessConfig config, double height_scale)
    : config_(std::move(config)), height_scale_(height_scale) {
  config_.validate();
  const int n_max = config_.n_max;

  // Heights and the step function, deepest level first so breakpoints ascend.
  built_heights_.resize(static_cast<size_t>(n_max - 1));
  built_spikes_.resize(static_cast<size_t>(n_max - 1));
  std::vector<Rational> bps;
  std::vector<double> vals;
  bps.push_back(Rational(0));
  for (int n = n_max; n >= 2; --n) {
    const double hn = height(n);
    built_heights_[static_cast<size_t>(n - 2)] = hn;
    const long long spikes = ((1ll << (3 * n - 1)) - 2) / 2;
    built_spikes_[static_cast<size_t>(n - 2)] = spikes;
    const BigInt den = BigInt(1) << (4 * n);
    const BigInt base = BigInt(1) << (3 * n);  // 2^-n over denominator 2^{4n}
    for (long long j = 1; j <= spikes; ++j) {
      vals.push_back(0.0);  // gap piece before the spike
      bps.push_back(Rational(base + 2 * j - 2, den));
      vals.push_back(hn);
      bps.push_back(Rational(base + 2 * j - 1, den));
    }
  }
  vals.push_back(0.0);
  bps.push_back(Rational(1));
  h_ = PiecewiseFunction::step(std::move(bps), std::move(vals));
  h_tail_bound_ = std::ldexp(1.0, -n_max) * height_scale_;

  // r points and the adjacent intervals J_i = [r_i, r_{i-1}].
  const long long depth = config_.effective_depth();
  r_.reserve(static_cast<size_t>(depth));
  for (long long i = 0; i < depth; ++i) r_.push_back(r_point(i));
  J_.reserve(static_cast<size_t>(depth - 1));
  for (long long i = 1; i < depth; ++i) J_.emplace_back(r_[i], r_[i - 1]);

  h_variation_ = spike_exact(h_, config_.seq, config_.q);
}

double WitnessSystem::height(int level) const {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (level == 1) return 0.0;
  const double capacity = std::ldexp(1.0, 3 * level - 1);
  const double lambda_sum = config_.seq.partial_sum(capacity);
  return height_scale_ * std::ldexp(1.0, -level) * std::pow(lambda_sum, -1.0 / config_.q);
}

const Interval& WitnessSystem::J(long long i) const {
  if (i < 1 || i > j_count())
    throw std::invalid_argument("J index outside built depth");
  return J_[static_cast<size_t>(i - 1)];
}

long long WitnessSystem::spikes_at_level(int n) const {
  if (n < 2 || n > config_.n_max) throw std::invalid_argument("level outside built range");
  return built_spikes_[static_cast<size_t>(n - 2)];
}

PiecewiseFunction WitnessSystem::tent(long long l, int plateau_sign) const {
  if (l < 1) throw std::invalid_argument("tent index must be >= 1");
  if (2 * l >= static_cast<long long>(r_.size()))
    throw std::invalid_argument("tent index " + std::to_string(l) +
                                " exceeds available r depth");
  if (plateau_sign < -1 || plateau_sign > 1)
    throw std::invalid_argument("plateau sign must be -1, 0 or +1");
  const Rational& foot = r_[static_cast<size_t>(2 * l)];
  const Rational& peak = r_[static_cast<size_t>(2 * l - 1)];
  const Rational& end = r_[static_cast<size_t>(2 * l - 2)];

  std::vector<Rational> bps{Rational(0), foot, peak, end};
  std::vector<double> points{0.0, 0.0, 1.0, 0.0};
  std::vector<double> lefts{0.0, 0.0, 1.0};
  std::vector<double> rights{0.0, 1.0, 0.0};
  if (plateau_sign != 0) {
    const double s = static_cast<double>(plateau_sign);
    // Plateau on (3/8, 3/8 + 2^-8]: jump after 3/8, value s at the right end,
    // zero beyond. The closed-interval increment over J' is then exactly s.
    bps.insert(bps.end(), {j_prime_.a, j_prime_.b, Rational(1)});
    points.insert(points.end(), {0.0, s, 0.0});
    lefts.insert(lefts.end(), {0.0, s, 0.0});
    rights.insert(rights.end(), {0.0, s, 0.0});
  } else {
    bps.push_back(Rational(1));
    points.push_back(0.0);
    lefts.push_back(0.0);
    rights.push_back(0.0);
  }
  return PiecewiseFunction::regulated(std::move(bps), std::move(points),
                                      std::move(lefts), std::move(rights));
}

std::vector<GeometryCheck> WitnessSystem::check_geometry() const {
  return check_geometry_for(r_);
}

std::vector<GeometryCheck> WitnessSystem::check_geometry_for(
    const std::vector<Rational>& r) const {
  std::vector<GeometryCheck> out;
  const auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  bool decreasing = true;
  long long bad_at = -1;
  for (size_t i = 1; i < r.size(); ++i)
    if (!(r[i] < r[i - 1])) {
      decreasing = false;
      bad_at = static_cast<long long>(i);
      break;
    }
  add("r_strictly_decreasing", decreasing,
      decreasing ? std::to_string(r.size()) + " points, exact comparisons"
                 : "violated at index " + std::to_string(bad_at));

  // Bridging inequality c_{n+1,last} <= 2^-n = b_{n,1}, checked exactly for
  // every consecutive level pair the r grid uses, together with the displayed
  // closed form (2^{3n+3} + 2^{3n+2} - 3) / 2^{4n+4}.
  const int deepest = static_cast<int>((r.size() + 1) / 2) + 2;
  bool bridging = true;
  for (int n = 2; n + 1 <= deepest; ++n) {
    const SpikeCell next = grid_points(n + 1, last_spike_index(n + 1));
    const Rational closed_form =
        Rational((BigInt(1) << (3 * n + 3)) + (BigInt(1) << (3 * n + 2)) - 3,
                 BigInt(1) << (4 * n + 4));
    if (next.c != closed_form || !(next.c <= pow2(-n))) {
      bridging = false;
      break;
    }
  }
  add("level_bridging_inequality", bridging,
      "c_{n+1,last} <= 2^-n for n = 2.." + std::to_string(deepest - 1));

  // Within every built level the spikes are separated by gaps.
  bool supports = true;
  for (int n = 2; n <= config_.n_max && supports; ++n) {
    const SpikeCell first = grid_points(n, 1);
    const SpikeCell last = grid_points(n, last_spike_index(n));
    supports = first.b < first.c && last.b < last.c && last.c < pow2(-(n - 1));
    if (n > 2) {
      const SpikeCell above = grid_points(n - 1, 1);
      supports = supports && last.c <= above.b;
    }
  }
  add("level_supports_disjoint", supports, "spike supports separated, levels 2.." +
                                               std::to_string(config_.n_max));

  const bool jp = !r.empty() && r.front() < j_prime_.a && j_prime_.b <= 1;
  add("j_prime_separated", jp,
      jp ? "r_0 = " + rational_to_string(r.front()) + " < 3/8"
         : "J' not separated from the J chain");

  bool conv = true;
  for (size_t i = 0; i + 1 < r.size(); i += 2) {
    const long long k = static_cast<long long>(i) / 2;
    if (!(r[i] <= pow2(-(k + 1)))) {
      conv = false;
      break;
    }
  }
  add("r_convergence_bound", conv, "r_{2k} <= 2^{-(k+1)} for all built k");

  bool heights_ok = true;
  for (int n = 2; n <= config_.n_max; ++n) {
    const double lhs = built_heights_[static_cast<size_t>(n - 2)] *
                       std::pow(config_.seq.partial_sum(std::ldexp(1.0, 3 * n - 1)),
                                1.0 / config_.q);
    if (std::abs(lhs - height_scale_ * std::ldexp(1.0, -n)) > 1e-12) heights_ok = false;
  }
  add("height_definition_consistency", heights_ok,
      "height_n * Lambda(M_n)^{1/q} = 2^-n to 1e-12");

  bool counts_ok = true;
  for (int n = 2; n <= config_.n_max; ++n)
    counts_ok = counts_ok &&
                BigInt(spikes_at_level(n)) == last_spike_index(n);
  add("spike_count_per_level", counts_ok, "(M_n - 2)/2 spikes at each level");

  return out;
}

}  // namespace lambdabv
