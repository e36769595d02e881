#include "gmtl/shift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gmtl/math_util.hpp"

namespace gmtl {

ShiftSpec::ShiftSpec(std::pair<double, double> shuffle_range,
                     std::pair<double, double> noise_range, std::uint64_t s)
    : shuffle_fraction_range(shuffle_range),
      noise_sigma_range(noise_range),
      seed(s) {
  auto bad = [](std::pair<double, double> r, double lo, double hi) {
    return r.first > r.second || r.first < lo || r.second > hi;
  };
  if (bad(shuffle_fraction_range, 0.0, 0.5))
    throw Error("ShiftSpec: shuffle fraction range must sit inside [0, 0.5]");
  if (bad(noise_sigma_range, 0.0, 5.0))
    throw Error("ShiftSpec: noise sigma range must sit inside [0, 5]");
}

JointPrior apply_shift(const JointPrior& base,
                       const std::vector<std::size_t>& index_assignment,
                       std::size_t cutoff, const std::vector<std::size_t>& pi,
                       const std::vector<double>& log_noise) {
  const std::size_t k = base.space().size();
  if (index_assignment.size() != k || log_noise.size() != k)
    throw Error("apply_shift: permutation or noise size mismatch");
  if (cutoff > k || pi.size() != cutoff)
    throw Error("apply_shift: cutoff inconsistent with pi");

  // canonical cell sitting at each shuffle position
  std::vector<std::size_t> cell_at(k);
  for (std::size_t c = 0; c < k; ++c) cell_at[index_assignment[c]] = c;

  std::vector<double> shifted_log(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t pos = index_assignment[c];
    const std::size_t src_cell =
        pos < cutoff ? cell_at[pi[pos]] : c;
    shifted_log[c] = base.log_prob_at(src_cell) + log_noise[c];
  }
  const double log_z = log_sum_exp(shifted_log);
  std::vector<double> probs(k);
  for (std::size_t c = 0; c < k; ++c)
    probs[c] = std::exp(shifted_log[c] - log_z);
  return JointPrior(base.space(), std::move(probs), PriorSource::sampled_shift);
}

ShiftedPrior sample_shift(const JointPrior& base, const ShiftSpec& spec) {
  if (base.has_zero_cell())
    throw Error("sample_shift: base prior has a zero cell");
  const std::size_t k = base.space().size();
  std::mt19937_64 rng(spec.seed);

  std::uniform_real_distribution<double> u_shuffle(
      spec.shuffle_fraction_range.first, spec.shuffle_fraction_range.second);
  std::uniform_real_distribution<double> u_noise(spec.noise_sigma_range.first,
                                                 spec.noise_sigma_range.second);
  const double shuffle_fraction = u_shuffle(rng);
  const double noise_sigma = u_noise(rng);

  const std::size_t cutoff = std::min(
      k, std::size_t(std::llround(shuffle_fraction * double(k))));

  // fresh random index assignment per draw so any subset of cells can land
  // in the shuffled prefix
  std::vector<std::size_t> index_assignment(k);
  std::iota(index_assignment.begin(), index_assignment.end(), std::size_t{0});
  std::shuffle(index_assignment.begin(), index_assignment.end(), rng);

  std::vector<std::size_t> pi(cutoff);
  std::iota(pi.begin(), pi.end(), std::size_t{0});
  std::shuffle(pi.begin(), pi.end(), rng);

  std::normal_distribution<double> noise(0.0, noise_sigma);
  std::vector<double> log_noise(k);
  for (double& v : log_noise) v = noise_sigma > 0.0 ? noise(rng) : 0.0;

  JointPrior q = apply_shift(base, index_assignment, cutoff, pi, log_noise);
  const double tau = weighted_kendall_tau(base, q);
  return ShiftedPrior{std::move(q), shuffle_fraction, noise_sigma, tau};
}

ImportanceWeights importance_weights(const std::vector<ScoreRecord>& records,
                                     const JointPrior& base,
                                     const JointPrior& q) {
  if (records.empty()) throw Error("importance_weights: empty record set");
  ImportanceWeights w;
  w.omega.resize(records.size());
  KahanSum total;
  for (std::size_t n = 0; n < records.size(); ++n) {
    const ScoreRecord& r = records[n];
    const double lp = base.log_prob(r.label_main, r.label_aux);
    if (std::isinf(lp)) {
      throw Error("unsupported pair: base probability is zero at (" +
                  std::to_string(r.label_main) + "," +
                  std::to_string(r.label_aux) + ")");
    }
    w.omega[n] = std::exp(q.log_prob(r.label_main, r.label_aux) - lp);
    total.add(w.omega[n]);
  }
  const double z = total.value();
  for (double& v : w.omega) v /= z;
  return w;
}

double importance_weighted_accuracy(const std::vector<ScoreRecord>& records,
                                    const std::vector<Prediction>& predictions,
                                    const JointPrior& base, const JointPrior& q,
                                    Task target) {
  if (records.size() != predictions.size())
    throw Error("importance_weighted_accuracy: length mismatch");
  const ImportanceWeights w = importance_weights(records, base, q);
  KahanSum acc;
  for (std::size_t n = 0; n < records.size(); ++n) {
    const bool correct = target == Task::main
                             ? predictions[n].y == records[n].label_main
                             : predictions[n].y_prime == records[n].label_aux;
    if (correct) acc.add(w.omega[n]);
  }
  return acc.value();
}

double effective_sample_size(const ImportanceWeights& weights) {
  KahanSum sq;
  for (double v : weights.omega) sq.add(v * v);
  return 1.0 / sq.value();
}

}  // namespace gmtl
