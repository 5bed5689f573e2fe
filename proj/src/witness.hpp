#pragma once

#include <string>
#include <vector>

#include "piecewise.hpp"
#include "variation.hpp"
#include "waterman.hpp"

namespace lambdabv {

// Build parameters for the witness system. q is the conjugate exponent of p;
// depth_r = 0 requests the default 2*(n_max - 1) grid-anchored points, and is
// otherwise the number of r points materialized (the r/J geometry and the
// per-level step heights are closed forms, so the depth may exceed the built
// step-function levels).
struct WitnessConfig {
  WatermanSequence seq = WatermanSequence::ones();
  double p = 2.0;
  double q = 2.0;
  int n_max = 6;
  long long depth_r = 0;

  long long effective_depth() const {
    return depth_r > 0 ? depth_r : 2ll * (n_max - 1);
  }
  void validate() const;
};

// b_{n,j} = 2^-n + (2j-2)/2^{4n},  c_{n,j} = 2^-n + (2j-1)/2^{4n}.
struct SpikeCell {
  Rational b;
  Rational c;
};
SpikeCell grid_points(int n, const BigInt& j);
SpikeCell grid_points(int n, long long j);

// M_n = 2^{3n-1}; the wide variant serves levels whose capacity exceeds 2^62.
long long level_capacity(int n);
BigInt level_capacity_big(int n);
BigInt last_spike_index(int n);  // (M_n - 2)/2

struct GeometryCheck {
  std::string name;
  bool pass;
  std::string detail;
};

// The materialized construction: the single-signed spike sum h truncated at
// n_max, its per-level heights, the strictly decreasing point sequence (r_i),
// the adjacent intervals J_i = [r_i, r_{i-1}], and the separated interval
// J' = [3/8, 3/8 + 2^-8] (closed for increment purposes; tents carry their
// plateau on (3/8, 3/8 + 2^-8] so that f(J') equals the plateau sign).
class WitnessSystem {
 public:
  explicit WitnessSystem(WitnessConfig config, double height_scale = 1.0);

  const WitnessConfig& config() const { return config_; }
  const PiecewiseFunction& h() const { return h_; }
  double height(int level) const;  // 2^-n * Lambda(M_n)^{-1/q}; level 1 is 0
  const std::vector<Rational>& r() const { return r_; }
  const Interval& J(long long i) const;  // J_i, i >= 1
  long long j_count() const { return static_cast<long long>(r_.size()) - 1; }
  const Interval& j_prime() const { return j_prime_; }
  double h_tail_bound() const { return h_tail_bound_; }
  long long spikes_at_level(int n) const;  // built spikes, n in [2, n_max]

  // Tent for index l: 0 at r_{2l}, affine up to 1 at r_{2l-1}, affine down to
  // 0 at r_{2l-2}, plus a plateau of height plateau_sign on (3/8, 3/8+2^-8].
  PiecewiseFunction tent(long long l, int plateau_sign) const;

  std::vector<GeometryCheck> check_geometry() const;
  // Same checks against an externally supplied r list (negative controls).
  std::vector<GeometryCheck> check_geometry_for(const std::vector<Rational>& r) const;

  // Certified variation data for the truncated h.
  const VariationResult& h_variation() const { return h_variation_; }

 private:
  WitnessConfig config_;
  double height_scale_ = 1.0;
  PiecewiseFunction h_ = PiecewiseFunction::constant(0.0);
  std::vector<double> built_heights_;  // index n-2 for n in [2, n_max]
  std::vector<long long> built_spikes_;
  std::vector<Rational> r_;
  std::vector<Interval> J_;
  Interval j_prime_ = Interval(Rational(3, 8), Rational(97, 256));
  double h_tail_bound_ = 0.0;
  VariationResult h_variation_;
};

}  // namespace lambdabv
