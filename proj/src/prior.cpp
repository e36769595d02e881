#include "gmtl/prior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmtl/math_util.hpp"

namespace gmtl {

TargetSpace::TargetSpace(std::size_t main_cardinality,
                         std::size_t aux_cardinality)
    : main_card_(main_cardinality), aux_card_(aux_cardinality) {
  if (main_card_ < 2 || aux_card_ < 2)
    throw Error("TargetSpace: both cardinalities must be >= 2");
}

std::size_t TargetSpace::index(std::size_t y, std::size_t y_prime) const {
  if (y >= main_card_ || y_prime >= aux_card_)
    throw Error("TargetSpace: label pair out of range");
  return y * aux_card_ + y_prime;
}

std::pair<std::size_t, std::size_t> TargetSpace::pair(std::size_t index) const {
  if (index >= size()) throw Error("TargetSpace: index out of range");
  return {index / aux_card_, index % aux_card_};
}

BivariateBernoulliParams::BivariateBernoulliParams(double p_, double p_prime_,
                                                   double cov_)
    : p(p_), p_prime(p_prime_), cov(cov_) {
  if (!(p > 0.0 && p < 1.0) || !(p_prime > 0.0 && p_prime < 1.0))
    throw Error("BivariateBernoulliParams: p and p' must lie in (0, 1)");
  const double lo = cov_lower_bound();
  const double hi = cov_upper_bound();
  if (cov < lo || cov > hi) {
    std::ostringstream os;
    os << "BivariateBernoulliParams: cov " << cov
       << " outside feasible interval [" << lo << ", " << hi << "]";
    throw Error(os.str());
  }
}

double BivariateBernoulliParams::cov_lower_bound() const {
  return std::max(-p * p_prime, -(1.0 - p) * (1.0 - p_prime));
}

double BivariateBernoulliParams::cov_upper_bound() const {
  return std::min(p * (1.0 - p_prime), p_prime * (1.0 - p));
}

JointPrior::JointPrior(TargetSpace space, std::vector<double> probs,
                       PriorSource source, double pseudocount)
    : space_(space), source_(source), pseudocount_(pseudocount) {
  if (probs.size() != space_.size())
    throw Error("JointPrior: cell count does not match target space");
  KahanSum total;
  for (double v : probs) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error("JointPrior: cell probabilities must be finite and >= 0");
    total.add(v);
  }
  if (!(total.value() > 0.0))
    throw Error("JointPrior: all cells are zero");
  const double log_total = std::log(total.value());
  log_probs_.resize(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    log_probs_[i] = std::log(probs[i]) - log_total;
}

bool JointPrior::has_zero_cell() const {
  return std::any_of(log_probs_.begin(), log_probs_.end(),
                     [](double v) { return std::isinf(v); });
}

JointPrior estimate_prior(const TargetSpace& space,
                          const std::vector<std::vector<double>>& counts,
                          double pseudocount) {
  if (counts.empty() || counts.size() != space.main_cardinality())
    throw Error("estimate_prior: counts must have one row per main label");
  if (pseudocount < 0.0)
    throw Error("estimate_prior: pseudocount must be >= 0");
  std::vector<double> probs(space.size());
  KahanSum total;
  for (std::size_t y = 0; y < counts.size(); ++y) {
    if (counts[y].size() != space.aux_cardinality())
      throw Error("estimate_prior: counts row has wrong width");
    for (std::size_t yp = 0; yp < counts[y].size(); ++yp) {
      const double c = counts[y][yp];
      if (c < 0.0) throw Error("estimate_prior: negative count");
      if (c == 0.0 && pseudocount == 0.0) {
        std::ostringstream os;
        os << "degenerate prior at (" << y << "," << yp << ")";
        throw Error(os.str());
      }
      probs[space.index(y, yp)] = c + pseudocount;
      total.add(c);
    }
  }
  if (!(total.value() > 0.0) && pseudocount == 0.0)
    throw Error("estimate_prior: empty counts");
  return JointPrior(space, std::move(probs), PriorSource::counted, pseudocount);
}

JointPrior prior_from_bernoulli(const BivariateBernoulliParams& params) {
  const double p11 = params.p * params.p_prime + params.cov;
  const double p10 = params.p - p11;
  const double p01 = params.p_prime - p11;
  const double p00 = 1.0 - p11 - p10 - p01;
  TargetSpace space(2, 2);
  std::vector<double> probs(4);
  probs[space.index(0, 0)] = p00;
  probs[space.index(0, 1)] = p01;
  probs[space.index(1, 0)] = p10;
  probs[space.index(1, 1)] = p11;
  for (double v : probs)
    if (v < 0.0 || v > 1.0)
      throw Error("prior_from_bernoulli: induced table has a cell outside [0, 1]");
  return JointPrior(space, std::move(probs), PriorSource::parametric);
}

std::vector<double> marginal_main(const JointPrior& prior) {
  const TargetSpace& space = prior.space();
  std::vector<double> out(space.main_cardinality());
  for (std::size_t y = 0; y < space.main_cardinality(); ++y) {
    KahanSum row;
    for (std::size_t yp = 0; yp < space.aux_cardinality(); ++yp)
      row.add(std::exp(prior.log_prob(y, yp)));
    out[y] = row.value();
  }
  return out;
}

}  // namespace gmtl
