#include "gmtl/synthetic.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gmtl/math_util.hpp"

namespace gmtl {

MixtureSpec::MixtureSpec(std::array<double, 4> means_,
                         std::array<double, 4> variances_,
                         BivariateBernoulliParams prior_)
    : means(means_), variances(variances_), prior(prior_) {
  for (double v : variances)
    if (!(v > 0.0)) throw Error("MixtureSpec: variances must be positive");
}

MixtureSpec MixtureSpec::reference_defaults(double cov) {
  return MixtureSpec({0.0, 1.0, 2.0, 3.0}, {0.4, 0.4, 0.6, 0.6},
                     BivariateBernoulliParams(0.5, 0.5, cov));
}

double MixtureSpec::log_density(double x, std::size_t y,
                                std::size_t y_prime) const {
  const std::size_t k = component(y, y_prime);
  return log_normal_pdf(x, means[k], variances[k]);
}

std::vector<SyntheticSample> sample_dataset(const MixtureSpec& spec,
                                            std::size_t n,
                                            std::uint64_t seed) {
  if (n == 0) throw Error("sample_dataset: n must be positive");
  const JointPrior prior = spec.joint_prior();
  const TargetSpace& space = prior.space();
  std::array<double, 4> cell;
  for (std::size_t i = 0; i < 4; ++i) cell[i] = std::exp(prior.log_prob_at(i));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<SyntheticSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unif(rng);
    double acc = 0.0;
    std::size_t idx = 3;
    for (std::size_t j = 0; j < 4; ++j) {
      acc += cell[j];
      if (u < acc) {
        idx = j;
        break;
      }
    }
    auto [y, yp] = space.pair(idx);
    const std::size_t k = spec.component(y, yp);
    const double x = spec.means[k] + std::sqrt(spec.variances[k]) * normal(rng);
    out.push_back({x, y, yp});
  }
  return out;
}

ExactPosteriors exact_log_posteriors(const MixtureSpec& spec, double x) {
  const JointPrior prior = spec.joint_prior();
  const TargetSpace& space = prior.space();
  ExactPosteriors out;
  out.log_post_joint.resize(4);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t yp = 0; yp < 2; ++yp)
      out.log_post_joint[space.index(y, yp)] =
          spec.log_density(x, y, yp) + prior.log_prob(y, yp);
  const double log_z = log_sum_exp(out.log_post_joint);
  for (double& v : out.log_post_joint) v -= log_z;

  out.log_post_main.resize(2);
  out.log_post_aux.resize(2);
  for (std::size_t y = 0; y < 2; ++y) {
    std::array<double, 2> row = {out.log_post_joint[space.index(y, 0)],
                                 out.log_post_joint[space.index(y, 1)]};
    out.log_post_main[y] = log_sum_exp(row);
  }
  for (std::size_t yp = 0; yp < 2; ++yp) {
    std::array<double, 2> col = {out.log_post_joint[space.index(0, yp)],
                                 out.log_post_joint[space.index(1, yp)]};
    out.log_post_aux[yp] = log_sum_exp(col);
  }
  return out;
}

ScoreRecord oracle_record(const MixtureSpec& spec, const SyntheticSample& s,
                          std::string example_id) {
  ExactPosteriors post = exact_log_posteriors(spec, s.x);
  ScoreRecord r;
  r.example_id = std::move(example_id);
  r.log_post_main = std::move(post.log_post_main);
  r.log_post_aux = std::move(post.log_post_aux);
  r.label_main = s.y;
  r.label_aux = s.y_prime;
  return r;
}

namespace {

/// Bracketing bisection on [lo, hi] for a function with exactly one sign
/// change detected on a uniform scan grid.
template <typename F>
double bisect_unique_root(const F& f, const BoundaryOptions& opts,
                          const char* what) {
  const double step = (opts.hi - opts.lo) / double(opts.scan_points);
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::size_t changes = 0;
  double prev_x = opts.lo;
  double prev_f = f(prev_x);
  for (std::size_t i = 1; i <= opts.scan_points; ++i) {
    const double x = opts.lo + step * double(i);
    const double fx = f(x);
    if ((prev_f < 0.0 && fx >= 0.0) || (prev_f >= 0.0 && fx < 0.0)) {
      ++changes;
      bracket_lo = prev_x;
      bracket_hi = x;
    }
    prev_x = x;
    prev_f = fx;
  }
  if (changes != 1) {
    std::ostringstream os;
    os << what << ": expected exactly one sign change on [" << opts.lo << ", "
       << opts.hi << "], found " << changes << " (f(lo) = " << f(opts.lo)
       << ", f(hi) = " << f(opts.hi) << ")";
    throw Error(os.str());
  }
  double lo = bracket_lo, hi = bracket_hi;
  double flo = f(lo);
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double dmtl_boundary(const MixtureSpec& spec, BoundaryOptions opts) {
  auto diff = [&spec](double x) {
    ExactPosteriors post = exact_log_posteriors(spec, x);
    return post.log_post_main[1] - post.log_post_main[0];
  };
  return bisect_unique_root(diff, opts, "dmtl_boundary");
}

double gmtl_boundary(const MixtureSpec& spec, Alpha alpha,
                     BoundaryOptions opts) {
  const JointPrior prior = spec.joint_prior();
  // score(y, y'; x) up to a term constant in (y, y'):
  // log N(x; mean_k, var_k) + (1 - alpha) log p(y, y')
  auto diff = [&spec, &prior, alpha](double x) {
    const double w = 1.0 - alpha.value();
    auto best_row = [&](std::size_t y) {
      double best = kNegInf;
      for (std::size_t yp = 0; yp < 2; ++yp) {
        const double s = spec.log_density(x, y, yp) + w * prior.log_prob(y, yp);
        best = std::max(best, s);
      }
      return best;
    };
    return best_row(1) - best_row(0);
  };
  return bisect_unique_root(diff, opts, "gmtl_boundary");
}

}  // namespace gmtl
