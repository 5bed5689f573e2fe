#pragma once

#include <optional>
#include <string>

#include "piecewise.hpp"
#include "waterman.hpp"

namespace lambdabv {

enum class VariationMethod { Oracle, SpikeExact, Enclosure };

// Enclosure [lower, upper] for V_{Lambda,p}(f) with the witness family that
// attains the lower bound. The witness increments are listed in the order
// they were paired with lambda_1, lambda_2, ... (descending magnitude).
struct VariationResult {
  double lower = 0.0;
  double upper = 0.0;
  IntervalFamily witness;
  std::vector<double> witness_increments;
  VariationMethod method = VariationMethod::Enclosure;
  std::string truncation_note;
};

// Raised when spike_exact is handed a function outside its class; the caller
// should fall back to variation_enclosure.
class NotSpikeClass : public std::runtime_error {
 public:
  explicit NotSpikeClass(const std::string& why)
      : std::runtime_error("not spike-class: " + why) {}
};

// (sum_i |f(I_i)|^p / lambda_i)^{1/p} with increments sorted descending and
// paired with ascending lambda indices. Since lambda is nondecreasing this
// sorted pairing dominates every other ordering of the same family
// (rearrangement inequality), so it equals the supremum over orderings.
double family_value(const PiecewiseFunction& f, const IntervalFamily& fam,
                    const WatermanSequence& seq, double p);
double family_value_from_increments(std::vector<double> magnitudes,
                                    const WatermanSequence& seq, double p);

// Exhaustive maximum over interval families with endpoints on the candidate
// grid (or an explicit override), pairwise disjoint interiors, at most
// max_intervals members. This is the testing oracle for the other methods.
// Refuses grids whose enumeration would be too large, and functions whose
// supremum the grid cannot certify.
VariationResult brute_force_variation(const PiecewiseFunction& f,
                                      const WatermanSequence& seq, double p,
                                      int max_intervals,
                                      const std::vector<Rational>* grid_override = nullptr);

// Estimated family count for the refusal check.
double brute_force_case_count(size_t grid_size, int max_intervals);

// Exact variation for step functions that return to a common baseline
// between constant excursions, all excursions on the same side of the
// baseline. Every interval crossing a baseline return is dominated by the
// single-edge intervals it covers, so the per-edge family is optimal; with
// mixed-sign excursions that argument fails (an interval bridging a positive
// and a negative excursion beats both edges), hence the sign restriction.
VariationResult spike_exact(const PiecewiseFunction& f, const WatermanSequence& seq,
                            double p);

// Structural classifier used by spike_exact; returns baseline + excursion
// deviations when f qualifies.
struct SpikeShape {
  double baseline = 0.0;
  std::vector<double> excursion_deviations;  // |e_i - baseline|, per excursion
};
std::optional<SpikeShape> classify_spike(const PiecewiseFunction& f, std::string* why);

// Certified enclosure for any piecewise function. Lower bound: best of a
// greedy family search on the candidate grid (effort rounds of local moves),
// spike_exact when applicable, and the exhaustive oracle when the grid is
// small. Upper bound: least of the oscillation bound
// Omega * Lambda(ceil(TV/Omega))^{1/p}, the per-support-component sum (each
// component bounded on its own, summed by the triangle inequality), the
// spike-exact value, and the oracle value when sound.
VariationResult variation_enclosure(const PiecewiseFunction& f,
                                    const WatermanSequence& seq, double p, int effort);

// |f(0)| + V_{Lambda,p}(f), interval-added.
struct NormEnclosure {
  double lower = 0.0;
  double upper = 0.0;
};
NormEnclosure norm_enclosure(const PiecewiseFunction& f, const WatermanSequence& seq,
                             double p, int effort = 12);

}  // namespace lambdabv
