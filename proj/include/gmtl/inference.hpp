#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gmtl/prior.hpp"

namespace gmtl {

/// One example's per-task log-posteriors plus ground-truth labels.
/// Log-posteriors are natural logs and must each normalize to 1 within
/// 1e-6 (tolerant: they are externally produced).
struct ScoreRecord {
  std::string example_id;
  std::vector<double> log_post_main;  // log p(y | x)
  std::vector<double> log_post_aux;   // log p(y' | x)
  std::size_t label_main = 0;
  std::size_t label_aux = 0;

  void validate(const TargetSpace& space) const;
};

/// Interpolation weight between discriminative (0) and generative (1)
/// prediction.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

 private:
  double value_;
};

struct Prediction {
  std::size_t y = 0;
  std::size_t y_prime = 0;
  std::vector<double> scores;  // canonical index order
};

/// Factorized joint log-posterior: entry (y, y') is
/// log_post_main[y] + log_post_aux[y'], in canonical index order.
std::vector<double> joint_log_posterior(const ScoreRecord& record,
                                        const TargetSpace& space);

/// argmax over (y, y') of a joint log-posterior matrix minus
/// alpha * log prior. Ties break to the smallest canonical index.
Prediction rescore_argmax(std::vector<double> joint_log_post,
                          const JointPrior& prior, Alpha alpha);

/// rescore_argmax applied to the factorized joint log-posterior of a
/// record.
Prediction gmtl_predict(const ScoreRecord& record, const JointPrior& prior,
                        Alpha alpha);

/// argmax_y of the marginal main-task log-posterior; ties to smallest y.
std::size_t dmtl_predict_main(const ScoreRecord& record);

/// Elementwise gmtl_predict, order preserved. Per-record failures are
/// rethrown with the example_id attached.
std::vector<Prediction> predict_batch(const std::vector<ScoreRecord>& records,
                                      const JointPrior& prior, Alpha alpha);

}  // namespace gmtl
