#include "gmtl/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmtl/math_util.hpp"

namespace gmtl {

std::vector<std::size_t> dense_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::size_t a, std::size_t b) {
                     return values[a] > values[b];
                   });
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

namespace {

inline double rank_weight(std::size_t r) { return 1.0 / double(r + 1); }

inline double pair_weight(std::size_t i, std::size_t j,
                          PairWeightCombination comb) {
  return comb == PairWeightCombination::additive
             ? rank_weight(i) + rank_weight(j)
             : rank_weight(i) * rank_weight(j);
}

inline int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

double weighted_kendall_tau(const std::vector<double>& base_values,
                            const std::vector<double>& shifted_values,
                            WeightedTauOptions opts) {
  if (base_values.size() != shifted_values.size())
    throw Error("weighted_kendall_tau: mismatched shapes");
  const std::size_t n = base_values.size();
  if (n < 2) throw Error("weighted_kendall_tau: need at least two elements");

  const std::vector<std::size_t> base_ranks = dense_ranks(base_values);
  const std::vector<std::size_t> shifted_ranks = dense_ranks(shifted_values);

  // shifted_of[i] = rank in shifted of the element whose base rank is i
  std::vector<std::size_t> shifted_of(n + 1);
  for (std::size_t e = 0; e < n; ++e) shifted_of[base_ranks[e]] = shifted_ranks[e];

  double num = 0.0;
  double denom = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double w = pair_weight(i, j, opts.combination);
      denom += w;
      // i < j, so the pair is concordant iff the shifted ranks agree in order
      num += w * double(sgn(double(j) - double(i)) *
                        sgn(double(shifted_of[j]) - double(shifted_of[i])));
    }
  }
  return num / denom;
}

double weighted_kendall_tau(const JointPrior& p, const JointPrior& q,
                            WeightedTauOptions opts) {
  if (!(p.space() == q.space()))
    throw Error("weighted_kendall_tau: priors have mismatched shapes");
  return weighted_kendall_tau(p.log_probs(), q.log_probs(), opts);
}

SeverityBins severity_bins(const std::vector<double>& taus,
                           std::size_t n_bins) {
  if (taus.empty()) throw Error("severity_bins: empty input");
  if (n_bins < 2) throw Error("severity_bins: need at least two bins");
  const auto [mn_it, mx_it] = std::minmax_element(taus.begin(), taus.end());
  const double mn = *mn_it, mx = *mx_it;

  SeverityBins out;
  if (mn == mx) {
    out.degenerate = true;
    out.edges = {mn, mx};
    out.midpoints = {mn};
    out.assignments.assign(taus.size(), 0);
    return out;
  }
  const double width = (mx - mn) / double(n_bins);
  out.edges.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b)
    out.edges[b] = mn + width * double(b);
  out.edges.back() = mx;
  out.midpoints.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b)
    out.midpoints[b] = 0.5 * (out.edges[b] + out.edges[b + 1]);
  out.assignments.reserve(taus.size());
  for (double t : taus) {
    auto idx = std::size_t(std::floor((t - mn) / (mx - mn) * double(n_bins)));
    out.assignments.push_back(std::min(idx, n_bins - 1));
  }
  return out;
}

}  // namespace gmtl
