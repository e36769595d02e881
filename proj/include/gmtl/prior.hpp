#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmtl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Discrete label sets of the main and auxiliary tasks, with the canonical
/// pair index f(y, y') = y * aux_cardinality + y' (row-major, 0-based).
class TargetSpace {
 public:
  TargetSpace(std::size_t main_cardinality, std::size_t aux_cardinality);

  std::size_t main_cardinality() const { return main_card_; }
  std::size_t aux_cardinality() const { return aux_card_; }
  std::size_t size() const { return main_card_ * aux_card_; }

  std::size_t index(std::size_t y, std::size_t y_prime) const;
  std::pair<std::size_t, std::size_t> pair(std::size_t index) const;

  bool operator==(const TargetSpace&) const = default;

 private:
  std::size_t main_card_;
  std::size_t aux_card_;
};

enum class PriorSource { counted, parametric, sampled_shift };

/// Parameters of a 2x2 joint over two Bernoulli targets: P(Y=1) = p,
/// P(Y'=1) = p_prime, Cov(Y, Y') = cov. Feasibility of cov is checked at
/// construction.
struct BivariateBernoulliParams {
  BivariateBernoulliParams(double p, double p_prime, double cov);

  double p;
  double p_prime;
  double cov;

  double cov_lower_bound() const;
  double cov_upper_bound() const;
};

/// Normalized joint distribution over target pairs, stored in the natural
/// log domain. Immutable after construction.
class JointPrior {
 public:
  /// probs are linear-domain cell probabilities in canonical index order;
  /// they are renormalized and logged.
  JointPrior(TargetSpace space, std::vector<double> probs, PriorSource source,
             double pseudocount = 0.0);

  const TargetSpace& space() const { return space_; }
  PriorSource source() const { return source_; }
  double pseudocount() const { return pseudocount_; }

  double log_prob(std::size_t y, std::size_t y_prime) const {
    return log_probs_[space_.index(y, y_prime)];
  }
  double log_prob_at(std::size_t index) const { return log_probs_[index]; }
  const std::vector<double>& log_probs() const { return log_probs_; }

  bool has_zero_cell() const;

 private:
  TargetSpace space_;
  std::vector<double> log_probs_;
  PriorSource source_;
  double pseudocount_;
};

/// Additively smoothed maximum-likelihood estimate from pair counts:
/// P(y, y') = (count + eps) / (total + eps * |Y x Y'|).
JointPrior estimate_prior(const TargetSpace& space,
                          const std::vector<std::vector<double>>& counts,
                          double pseudocount);

JointPrior prior_from_bernoulli(const BivariateBernoulliParams& params);

/// Marginal over the main target: entry y is sum_y' p(y, y').
std::vector<double> marginal_main(const JointPrior& prior);

}  // namespace gmtl
