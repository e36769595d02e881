#pragma once

#include <cstddef>
#include <vector>

#include "gmtl/prior.hpp"

namespace gmtl {

enum class PairWeightCombination { additive, multiplicative };

struct WeightedTauOptions {
  PairWeightCombination combination = PairWeightCombination::additive;
};

/// 1-based ranks of `values` in descending order; ties broken by position
/// (canonical index), so rank 1 is the largest value.
std::vector<std::size_t> dense_ranks(const std::vector<double>& values);

/// Weighted Kendall rank correlation between two value vectors of equal
/// length, with per-rank weight w(r) = 1/(r+1) taken from the base ranks
/// and pair weights combined per `opts`. 1 for identical rankings, -1 for
/// fully reversed rankings.
double weighted_kendall_tau(const std::vector<double>& base_values,
                            const std::vector<double>& shifted_values,
                            WeightedTauOptions opts = {});

/// Severity of the shift from p to q: weighted tau over the flattened
/// cell probabilities in canonical index order.
double weighted_kendall_tau(const JointPrior& p, const JointPrior& q,
                            WeightedTauOptions opts = {});

struct SeverityBins {
  std::vector<double> edges;      // n_bins + 1, equally spaced
  std::vector<double> midpoints;  // n_bins
  std::vector<std::size_t> assignments;
  bool degenerate = false;  // all taus identical
};

/// Equally spaced bins over [min(taus), max(taus)]; values on an interior
/// edge go to the right bin; the rightmost bin is closed.
SeverityBins severity_bins(const std::vector<double>& taus,
                           std::size_t n_bins = 5);

}  // namespace gmtl
