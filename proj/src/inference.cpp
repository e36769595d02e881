#include "gmtl/inference.hpp"

#include <cmath>
#include <sstream>

#include "gmtl/math_util.hpp"

namespace gmtl {

namespace {

void check_normalized(const std::vector<double>& log_post, const char* what) {
  KahanSum s;
  for (double v : log_post) s.add(std::exp(v));
  if (std::abs(s.value() - 1.0) > 1e-6) {
    std::ostringstream os;
    os << what << " log-posterior does not normalize: sum = " << s.value();
    throw Error(os.str());
  }
}

}  // namespace

void ScoreRecord::validate(const TargetSpace& space) const {
  if (log_post_main.size() != space.main_cardinality() ||
      log_post_aux.size() != space.aux_cardinality())
    throw Error("ScoreRecord: posterior length does not match target space");
  if (label_main >= space.main_cardinality() ||
      label_aux >= space.aux_cardinality())
    throw Error("ScoreRecord: label out of range");
  check_normalized(log_post_main, "main");
  check_normalized(log_post_aux, "aux");
}

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw Error("Alpha: value must lie in [0, 1]");
}

std::vector<double> joint_log_posterior(const ScoreRecord& record,
                                        const TargetSpace& space) {
  if (record.log_post_main.size() != space.main_cardinality() ||
      record.log_post_aux.size() != space.aux_cardinality())
    throw Error("joint_log_posterior: shape mismatch with target space");
  std::vector<double> joint(space.size());
  for (std::size_t y = 0; y < space.main_cardinality(); ++y)
    for (std::size_t yp = 0; yp < space.aux_cardinality(); ++yp)
      joint[space.index(y, yp)] =
          record.log_post_main[y] + record.log_post_aux[yp];
  return joint;
}

Prediction rescore_argmax(std::vector<double> joint_log_post,
                          const JointPrior& prior, Alpha alpha) {
  const TargetSpace& space = prior.space();
  if (joint_log_post.size() != space.size())
    throw Error("rescore_argmax: shape mismatch with target space");
  if (alpha.value() > 0.0 && prior.has_zero_cell())
    throw Error("unsmoothed prior: zero cell with alpha > 0");
  Prediction out;
  out.scores = std::move(joint_log_post);
  if (alpha.value() > 0.0)
    for (std::size_t i = 0; i < out.scores.size(); ++i)
      out.scores[i] -= alpha.value() * prior.log_prob_at(i);
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.scores.size(); ++i)
    if (out.scores[i] > out.scores[best]) best = i;
  auto [y, yp] = space.pair(best);
  out.y = y;
  out.y_prime = yp;
  return out;
}

Prediction gmtl_predict(const ScoreRecord& record, const JointPrior& prior,
                        Alpha alpha) {
  return rescore_argmax(joint_log_posterior(record, prior.space()), prior,
                        alpha);
}

std::size_t dmtl_predict_main(const ScoreRecord& record) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < record.log_post_main.size(); ++i)
    if (record.log_post_main[i] > record.log_post_main[best]) best = i;
  return best;
}

std::vector<Prediction> predict_batch(const std::vector<ScoreRecord>& records,
                                      const JointPrior& prior, Alpha alpha) {
  if (records.empty()) throw Error("predict_batch: empty batch");
  std::vector<Prediction> out;
  out.reserve(records.size());
  for (const ScoreRecord& r : records) {
    try {
      out.push_back(gmtl_predict(r, prior, alpha));
    } catch (const Error& e) {
      std::ostringstream os;
      os << "example " << r.example_id << ": " << e.what();
      throw Error(os.str());
    }
  }
  return out;
}

}  // namespace gmtl
