#include "variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lambdabv {

namespace {

constexpr double kCaseLimit = 5e7;

double neumaier_total(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// Index-pair family over a fixed grid, kept in scan order
// a_1 < b_1 <= a_2 < b_2 <= ...
using IndexFamily = std::vector<std::pair<int, int>>;

double indexed_family_value(const IndexFamily& fam, const std::vector<double>& vals,
                            const WatermanSequence& seq, double p) {
  std::vector<double> mags;
  mags.reserve(fam.size());
  for (auto [a, b] : fam) mags.push_back(std::abs(vals[b] - vals[a]));
  return family_value_from_increments(std::move(mags), seq, p);
}

IntervalFamily materialize(const IndexFamily& fam, const std::vector<Rational>& grid) {
  std::vector<Interval> intervals;
  intervals.reserve(fam.size());
  for (auto [a, b] : fam) intervals.emplace_back(grid[a], grid[b]);
  return IntervalFamily(std::move(intervals));
}

std::vector<double> sorted_descending_increments(const PiecewiseFunction& f,
                                                 const IntervalFamily& fam) {
  std::vector<double> mags;
  mags.reserve(fam.size());
  for (const auto& I : fam.intervals()) mags.push_back(std::abs(f.increment(I)));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

}  // namespace

double family_value_from_increments(std::vector<double> magnitudes,
                                    const WatermanSequence& seq, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("family value requires p >= 1");
  if (magnitudes.empty()) return 0.0;
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<double>());
  std::vector<double> terms;
  terms.reserve(magnitudes.size());
  for (size_t i = 0; i < magnitudes.size(); ++i) {
    if (magnitudes[i] == 0.0) break;  // sorted: the rest contribute nothing
    terms.push_back(std::pow(magnitudes[i], p) / seq.term(static_cast<long long>(i) + 1));
  }
  return std::pow(neumaier_total(terms), 1.0 / p);
}

double family_value(const PiecewiseFunction& f, const IntervalFamily& fam,
                    const WatermanSequence& seq, double p) {
  return family_value_from_increments(sorted_descending_increments(f, fam), seq, p);
}

double brute_force_case_count(size_t grid_size, int max_intervals) {
  // Families a_1 < b_1 <= a_2 < b_2 <= ... with k intervals over G points
  // number C(G+k-1, 2k); sum over k <= max_intervals.
  double total = 0.0;
  for (int k = 1; k <= max_intervals; ++k) {
    double c = 1.0;
    const double n = static_cast<double>(grid_size) + k - 1;
    for (int j = 0; j < 2 * k; ++j) c *= (n - j) / (2 * k - j);
    if (2 * k <= static_cast<int>(grid_size) + k - 1) total += c;
  }
  return total;
}

VariationResult brute_force_variation(const PiecewiseFunction& f,
                                      const WatermanSequence& seq, double p,
                                      int max_intervals,
                                      const std::vector<Rational>* grid_override) {
  if (max_intervals < 1) throw std::invalid_argument("max_intervals must be >= 1");
  if (!f.grid_attains_supremum())
    throw std::invalid_argument(
        "grid cannot certify the supremum for this function (jump borders a "
        "non-constant piece); use variation_enclosure");
  const std::vector<Rational> grid =
      grid_override ? *grid_override : f.candidate_grid();
  if (grid.size() < 2) throw std::invalid_argument("grid needs at least 2 points");
  const double estimate = brute_force_case_count(grid.size(), max_intervals);
  if (estimate > kCaseLimit)
    throw std::invalid_argument(
        "grid too large for exhaustive search: about " + std::to_string(estimate) +
        " families over " + std::to_string(grid.size()) + " points");

  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) vals[i] = f.evaluate(grid[i]);

  const int G = static_cast<int>(grid.size());
  double best = 0.0;
  IndexFamily best_family;  // empty family attains 0
  IndexFamily current;

  // Depth-first over interval start positions; lexicographic order makes the
  // first strict maximum the lexicographically smallest witness.
  std::function<void(int)> extend = [&](int start) {
    if (static_cast<int>(current.size()) >= max_intervals) return;
    for (int a = start; a + 1 < G; ++a) {
      for (int b = a + 1; b < G; ++b) {
        current.emplace_back(a, b);
        const double v = indexed_family_value(current, vals, seq, p);
        if (v > best) {
          best = v;
          best_family = current;
        }
        extend(b);
        current.pop_back();
      }
    }
  };
  extend(0);

  VariationResult out;
  out.method = VariationMethod::Oracle;
  out.lower = out.upper = best;
  out.witness = materialize(best_family, grid);
  out.witness_increments = sorted_descending_increments(f, out.witness);
  out.truncation_note = "exhaustive over " + std::to_string(grid.size()) +
                        "-point grid, families up to " + std::to_string(max_intervals);
  return out;
}

std::optional<SpikeShape> classify_spike(const PiecewiseFunction& f, std::string* why) {
  const auto reject = [&](const std::string& reason) {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (f.kind() != FunctionKind::Step) return reject("not a step function");
  // Merge equal adjacent pieces, then expect baseline / excursion alternation.
  std::vector<double> runs;
  for (double v : f.step_values())
    if (runs.empty() || runs.back() != v) runs.push_back(v);
  const double baseline = runs.front();
  if (runs.back() != baseline) return reject("does not end at its starting baseline");
  SpikeShape shape;
  shape.baseline = baseline;
  int sign = 0;
  for (size_t i = 1; i + 1 < runs.size(); i += 2) {
    const double deviation = runs[i] - baseline;
    if (runs[i + 1] != baseline)
      return reject("consecutive excursions without a baseline return");
    const int s = deviation > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return reject("excursions on both sides of the baseline");
    shape.excursion_deviations.push_back(std::abs(deviation));
  }
  return shape;
}

VariationResult spike_exact(const PiecewiseFunction& f, const WatermanSequence& seq,
                            double p) {
  std::string why;
  const auto shape = classify_spike(f, &why);
  if (!shape) throw NotSpikeClass(why);

  std::vector<double> edges;
  edges.reserve(2 * shape->excursion_deviations.size());
  for (double d : shape->excursion_deviations) {
    edges.push_back(d);
    edges.push_back(d);
  }
  const double value = family_value_from_increments(edges, seq, p);

  // Witness: ride every excursion up and down. Piece k spans
  // [breakpoints[k], breakpoints[k+1]); baseline pieces separate excursions,
  // so adjacent edges can share endpoints.
  const auto& bps = f.breakpoints();
  const auto vals = f.step_values();
  std::vector<Interval> intervals;
  size_t k = 0;
  while (k < vals.size()) {
    if (vals[k] == shape->baseline) {
      ++k;
      continue;
    }
    size_t end = k;
    while (end < vals.size() && vals[end] == vals[k]) ++end;
    intervals.emplace_back(bps[k - 1], bps[k]);    // rise from the baseline piece start
    intervals.emplace_back(bps[end - 1], bps[end]);  // fall back to baseline
    k = end;
  }

  VariationResult out;
  out.method = VariationMethod::SpikeExact;
  out.lower = out.upper = value;
  out.witness = IntervalFamily(std::move(intervals));
  out.witness_increments = sorted_descending_increments(f, out.witness);
  out.truncation_note = "per-edge family over " +
                        std::to_string(shape->excursion_deviations.size()) +
                        " single-signed excursions";
  return out;
}

namespace {

// Oscillation route: any family satisfies sum |f(I)|^p/lambda_i
// <= Omega^{p-1} sum |f(I)|/lambda_i <= Omega^p Lambda(ceil(TV/Omega)),
// using t^p <= Omega^{p-1} t on [0, Omega] and a greedy budget argument.
double oscillation_bound(const PiecewiseFunction& f, const WatermanSequence& seq,
                         double p) {
  const double omega = f.oscillation();
  if (omega == 0.0) return 0.0;
  const double tv = f.total_variation();
  // Conservative ceiling: rounding the ratio up keeps the bound valid.
  const double k = std::max(1.0, std::ceil(tv / omega + 1e-9));
  return omega * std::pow(seq.partial_sum_upper(k), 1.0 / p);
}

// Maximal runs of nonzero pieces of a step function, each extended to a
// function on [0,1] that vanishes outside the run. f equals the sum of its
// components, so V(f) <= sum V(component) by the triangle inequality.
std::vector<PiecewiseFunction> support_components(const PiecewiseFunction& f) {
  const auto& bps = f.breakpoints();
  const auto vals = f.step_values();
  std::vector<PiecewiseFunction> components;
  size_t k = 0;
  while (k < vals.size()) {
    if (vals[k] == 0.0) {
      ++k;
      continue;
    }
    size_t end = k;
    while (end < vals.size() && vals[end] != 0.0) ++end;
    std::vector<Rational> cb;
    std::vector<double> cv;
    if (bps[k] != 0) {
      cb.push_back(Rational(0));
      cv.push_back(0.0);
    }
    for (size_t i = k; i < end; ++i) {
      cb.push_back(bps[i]);
      cv.push_back(vals[i]);
    }
    cb.push_back(bps[end]);
    if (bps[end] != 1) {
      cv.push_back(0.0);
      cb.push_back(Rational(1));
    }
    components.push_back(PiecewiseFunction::step(std::move(cb), std::move(cv)));
    k = end;
  }
  return components;
}

double component_sum_bound(const PiecewiseFunction& f, const WatermanSequence& seq,
                           double p) {
  double total = 0.0;
  for (const auto& c : support_components(f)) {
    double bound = oscillation_bound(c, seq, p);
    if (auto shape = classify_spike(c, nullptr)) {
      std::vector<double> edges;
      for (double d : shape->excursion_deviations) {
        edges.push_back(d);
        edges.push_back(d);
      }
      bound = std::min(bound, family_value_from_increments(edges, seq, p));
    }
    total += bound;
  }
  return total;
}

struct GreedyOutcome {
  double value = 0.0;
  IndexFamily family;
};

// Hill climbing from the all-single-edge partition. Correctness rests on the
// oracle; this only has to find good feasible families.
GreedyOutcome greedy_search(const std::vector<double>& vals,
                            const WatermanSequence& seq, double p, int effort) {
  const int G = static_cast<int>(vals.size());
  IndexFamily fam;
  for (int i = 0; i + 1 < G; ++i)
    if (vals[i] != vals[i + 1]) fam.emplace_back(i, i + 1);
  auto value_of = [&](const IndexFamily& x) {
    return indexed_family_value(x, vals, seq, p);
  };
  auto valid = [&](const IndexFamily& x) {
    for (size_t i = 0; i + 1 < x.size(); ++i)
      if (x[i].second > x[i + 1].first) return false;
    return !x.empty() && x.front().first >= 0 && x.back().second < G;
  };
  double best = value_of(fam);

  for (int round = 0; round < effort; ++round) {
    double round_best = best;
    IndexFamily round_fam;
    auto consider = [&](IndexFamily cand) {
      if (!valid(cand)) return;
      const double v = value_of(cand);
      if (v > round_best) {
        round_best = v;
        round_fam = std::move(cand);
      }
    };
    for (size_t i = 0; i < fam.size(); ++i) {
      if (i + 1 < fam.size() && fam[i].second == fam[i + 1].first) {
        IndexFamily cand = fam;  // merge neighbours
        cand[i].second = cand[i + 1].second;
        cand.erase(cand.begin() + static_cast<long>(i) + 1);
        consider(std::move(cand));
      }
      {
        IndexFamily cand = fam;  // drop
        cand.erase(cand.begin() + static_cast<long>(i));
        if (!cand.empty()) consider(std::move(cand));
      }
      for (int da : {-1, 1}) {  // shift endpoints to neighbouring grid points
        IndexFamily cand = fam;
        cand[i].first += da;
        if (cand[i].first >= 0 && cand[i].first < cand[i].second) consider(std::move(cand));
        cand = fam;
        cand[i].second += da;
        if (cand[i].second < G && cand[i].first < cand[i].second) consider(std::move(cand));
      }
      if (fam[i].second - fam[i].first > 1) {  // split at an interior grid point
        const int mid = (fam[i].first + fam[i].second) / 2;
        IndexFamily cand = fam;
        cand[i].second = mid;
        cand.insert(cand.begin() + static_cast<long>(i) + 1, {mid, fam[i].second});
        consider(std::move(cand));
      }
    }
    if (round_best <= best) break;
    best = round_best;
    fam = std::move(round_fam);
  }
  return {best, fam};
}

}  // namespace

VariationResult variation_enclosure(const PiecewiseFunction& f,
                                    const WatermanSequence& seq, double p,
                                    int effort) {
  if (!(p >= 1.0)) throw std::invalid_argument("variation requires p >= 1");
  VariationResult out;
  out.method = VariationMethod::Enclosure;

  if (f.oscillation() == 0.0) {  // constant short-circuits to [0, 0]
    out.truncation_note = "constant function";
    return out;
  }

  // Exact fast path: single-signed spike functions.
  std::string why;
  if (classify_spike(f, &why)) {
    out = spike_exact(f, seq, p);
    return out;
  }

  const std::vector<Rational> grid = f.candidate_grid();
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) vals[i] = f.evaluate(grid[i]);

  double upper = oscillation_bound(f, seq, p);
  std::string note = "oscillation bound";
  if (f.kind() == FunctionKind::Step) {
    const double comp = component_sum_bound(f, seq, p);
    if (comp < upper) {
      upper = comp;
      note = "per-support-component bound";
    }
  }

  const GreedyOutcome greedy = greedy_search(vals, seq, p, effort);
  double lower = greedy.value;
  IndexFamily lower_family = greedy.family;

  const bool oracle_feasible =
      f.grid_attains_supremum() && brute_force_case_count(grid.size(), 8) <= 2e5;
  if (oracle_feasible) {
    const VariationResult oracle = brute_force_variation(f, seq, p, 8);
    if (oracle.lower > lower) {
      lower = oracle.lower;
      lower_family.clear();
      out.witness = oracle.witness;
    }
    if (oracle.upper < upper) {
      upper = oracle.upper;
      note = "exhaustive grid search (supremum attained on grid)";
    }
  }
  if (!lower_family.empty()) out.witness = materialize(lower_family, grid);

  out.lower = lower;
  out.upper = std::max(upper, lower);
  out.witness_increments = sorted_descending_increments(f, out.witness);
  out.truncation_note = note;
  return out;
}

NormEnclosure norm_enclosure(const PiecewiseFunction& f, const WatermanSequence& seq,
                             double p, int effort) {
  const VariationResult v = variation_enclosure(f, seq, p, effort);
  const double f0 = std::abs(f.evaluate(Rational(0)));
  return {f0 + v.lower, f0 + v.upper};
}

}  // namespace lambdabv
