#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gmtl/inference.hpp"
#include "gmtl/prior.hpp"

namespace gmtl {

/// Four-component univariate Gaussian mixture whose latent component index
/// is 2y + y', together with the bivariate Bernoulli prior on (y, y').
struct MixtureSpec {
  MixtureSpec(std::array<double, 4> means, std::array<double, 4> variances,
              BivariateBernoulliParams prior);

  /// Means 0, 1, 2, 3; variances 0.4, 0.4, 0.6, 0.6; p = p' = 0.5.
  static MixtureSpec reference_defaults(double cov);

  std::array<double, 4> means;
  std::array<double, 4> variances;
  BivariateBernoulliParams prior;

  std::size_t component(std::size_t y, std::size_t y_prime) const {
    return 2 * y + y_prime;
  }
  double log_density(double x, std::size_t y, std::size_t y_prime) const;
  JointPrior joint_prior() const { return prior_from_bernoulli(prior); }
};

struct SyntheticSample {
  double x;
  std::size_t y;
  std::size_t y_prime;
};

struct ExactPosteriors {
  std::vector<double> log_post_main;   // over y
  std::vector<double> log_post_aux;    // over y'
  std::vector<double> log_post_joint;  // canonical index order
};

std::vector<SyntheticSample> sample_dataset(const MixtureSpec& spec,
                                            std::size_t n,
                                            std::uint64_t seed);

/// Exact Bayes posteriors at x: joint proportional to
/// N(x; mean_k, var_k) * P(y, y'), marginals by summation. All normalized
/// within 1e-12.
ExactPosteriors exact_log_posteriors(const MixtureSpec& spec, double x);

ScoreRecord oracle_record(const MixtureSpec& spec, const SyntheticSample& s,
                          std::string example_id);

struct BoundaryOptions {
  double lo = -5.0;
  double hi = 8.0;
  std::size_t scan_points = 2048;
  double tol = 1e-10;
};

/// x where argmax_y p(y|x) flips, with y' marginalized out. Requires
/// exactly one sign change on the search interval.
double dmtl_boundary(const MixtureSpec& spec, BoundaryOptions opts = {});

/// x where the y-portion of the alpha-interpolated joint argmax flips.
/// At alpha = 1 the score is the pure Gaussian log-density.
double gmtl_boundary(const MixtureSpec& spec, Alpha alpha,
                     BoundaryOptions opts = {});

}  // namespace gmtl
