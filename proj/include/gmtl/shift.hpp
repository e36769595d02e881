#pragma once

#include <cstdint>
#include <vector>

#include "gmtl/inference.hpp"
#include "gmtl/prior.hpp"
#include "gmtl/rank.hpp"

namespace gmtl {

/// Parameter ranges for the shuffle-and-perturb sampler. Ranges must sit
/// inside [0, 0.5] (shuffle fraction) and [0, 5] (noise sigma).
struct ShiftSpec {
  ShiftSpec(std::pair<double, double> shuffle_fraction_range = {0.0, 0.5},
            std::pair<double, double> noise_sigma_range = {1e-12, 5.0},
            std::uint64_t seed = 0);

  std::pair<double, double> shuffle_fraction_range;
  std::pair<double, double> noise_sigma_range;
  std::uint64_t seed;
};

struct ShiftedPrior {
  JointPrior q;
  double shuffle_fraction;
  double noise_sigma;
  double tau_vs_base;
};

/// Deterministic core of the sampler: cells are ordered by
/// `index_assignment` (a permutation of 0..K-1 mapping canonical index to
/// shuffle index), the first `cutoff` shuffle positions are permuted by
/// `pi` (a permutation of 0..cutoff-1), and `log_noise[c]` is added to the
/// canonical cell c before renormalization.
JointPrior apply_shift(const JointPrior& base,
                       const std::vector<std::size_t>& index_assignment,
                       std::size_t cutoff, const std::vector<std::size_t>& pi,
                       const std::vector<double>& log_noise);

/// Shuffle-and-perturb sampler: draws shuffle_fraction and noise_sigma
/// uniformly from the spec ranges, permutes a random prefix of the cells
/// under a per-draw random index assignment, and adds Gaussian log-domain
/// noise. tau_vs_base is the weighted Kendall tau between base and q.
ShiftedPrior sample_shift(const JointPrior& base, const ShiftSpec& spec);

struct ImportanceWeights {
  std::vector<double> omega;  // nonnegative, sums to 1
};

/// Self-normalized weights q(y_n, y'_n) / p(y_n, y'_n).
ImportanceWeights importance_weights(const std::vector<ScoreRecord>& records,
                                     const JointPrior& base,
                                     const JointPrior& q);

enum class Task { main, aux };

/// Importance-weighted accuracy of `predictions` on the chosen task under
/// the shifted prior q. Accumulated in record order with compensated
/// summation.
double importance_weighted_accuracy(const std::vector<ScoreRecord>& records,
                                    const std::vector<Prediction>& predictions,
                                    const JointPrior& base, const JointPrior& q,
                                    Task target = Task::main);

/// Kish effective sample size 1 / sum(omega^2); in [1, N].
double effective_sample_size(const ImportanceWeights& weights);

}  // namespace gmtl
