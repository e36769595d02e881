// Command-line front end: prior estimation, single-shift evaluation, the
// full shift-robustness sweep, synthetic decision-boundary tables, and
// synthetic oracle score generation.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmtl/harness.hpp"
#include "gmtl/io.hpp"
#include "gmtl/math_util.hpp"
#include "gmtl/rank.hpp"
#include "gmtl/shift.hpp"
#include "gmtl/synthetic.hpp"

namespace {

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string field;
  while (std::getline(is, field, ',')) out.push_back(std::stod(field));
  return out;
}

int cmd_estimate_prior(const std::string& counts_path, double epsilon) {
  const auto counts = gmtl::read_counts(counts_path);
  gmtl::TargetSpace space(counts.size(), counts[0].size());
  const gmtl::JointPrior prior = gmtl::estimate_prior(space, counts, epsilon);
  std::cout << "y\ty_prime\tprob\tlog_prob\n";
  for (std::size_t y = 0; y < space.main_cardinality(); ++y)
    for (std::size_t yp = 0; yp < space.aux_cardinality(); ++yp)
      std::cout << y << '\t' << yp << '\t'
                << gmtl::format_real(std::exp(prior.log_prob(y, yp))) << '\t'
                << gmtl::format_real(prior.log_prob(y, yp)) << '\n';
  return 0;
}

int cmd_boundary(const std::string& cov_grid, double alpha) {
  std::cout << "cov,dmtl_boundary,gmtl_boundary\n";
  for (double cov : parse_grid(cov_grid)) {
    const gmtl::MixtureSpec spec = gmtl::MixtureSpec::reference_defaults(cov);
    const double dmtl = gmtl::dmtl_boundary(spec);
    const double gmtl_b = gmtl::gmtl_boundary(spec, gmtl::Alpha(alpha));
    std::cout << gmtl::format_real(cov) << ',' << gmtl::format_real(dmtl)
              << ',' << gmtl::format_real(gmtl_b) << '\n';
  }
  return 0;
}

int cmd_synth_scores(const std::string& out_path,
                     const std::string& counts_out, std::size_t n,
                     std::uint64_t seed, double cov) {
  const gmtl::MixtureSpec spec = gmtl::MixtureSpec::reference_defaults(cov);
  const auto samples = gmtl::sample_dataset(spec, n, seed);
  std::vector<gmtl::ScoreRecord> records;
  records.reserve(samples.size());
  std::vector<std::vector<double>> counts(2, std::vector<double>(2, 0.0));
  char id[32];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::snprintf(id, sizeof id, "s%06zu", i);
    records.push_back(gmtl::oracle_record(spec, samples[i], id));
    counts[samples[i].y][samples[i].y_prime] += 1.0;
  }
  gmtl::write_scores(out_path, records);
  if (!counts_out.empty()) gmtl::write_counts(counts_out, counts);
  return 0;
}

int cmd_evaluate(const std::string& scores_path, const std::string& counts_path,
                 double epsilon, const std::string& alpha_grid,
                 std::uint64_t seed, double shuffle_max, double noise_max) {
  const gmtl::TargetSpace space = gmtl::scores_target_space(scores_path);
  const auto records = gmtl::read_scores(scores_path, space);
  const auto counts = gmtl::read_counts(counts_path);
  const gmtl::JointPrior prior = gmtl::estimate_prior(space, counts, epsilon);
  gmtl::ShiftSpec spec({0.0, shuffle_max},
                       {std::min(1e-12, noise_max), noise_max}, seed);
  const gmtl::ShiftedPrior shifted = gmtl::sample_shift(prior, spec);
  const auto weights = gmtl::importance_weights(records, prior, shifted.q);
  std::cout << "tau," << gmtl::format_real(shifted.tau_vs_base) << '\n';
  std::cout << "ess," << gmtl::format_real(gmtl::effective_sample_size(weights))
            << '\n';
  std::cout << "alpha,weighted_accuracy\n";
  for (double a : parse_grid(alpha_grid)) {
    const auto preds = gmtl::predict_batch(records, prior, gmtl::Alpha(a));
    const double acc = gmtl::importance_weighted_accuracy(
        records, preds, prior, shifted.q, gmtl::Task::main);
    std::cout << gmtl::format_real(a) << ',' << gmtl::format_real(acc) << '\n';
  }
  return 0;
}

int cmd_sweep(const gmtl::SweepConfig& config) {
  const gmtl::SweepResult result = gmtl::run_sweep_files(config);
  std::cout << "bins: " << result.bins.size() << '\n';
  for (const gmtl::BinSummary& b : result.bins) {
    std::cout << "tau_mid=" << gmtl::format_real(b.tau_midpoint)
              << " n=" << b.n_replicates;
    if (b.n_replicates > 0)
      std::cout << " optimal_alpha=" << gmtl::format_real(b.optimal_alpha)
                << " gap=" << gmtl::format_real(b.gap);
    std::cout << '\n';
  }
  const gmtl::Correlation corr = gmtl::optimal_alpha_correlation(result);
  std::cout << "tau_vs_optimal_alpha_correlation="
            << gmtl::format_real(corr.value)
            << (corr.zero_variance ? " (zero variance)" : "") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generative multitask prediction and prior-shift evaluation"};
  app.require_subcommand(1);

  std::string scores_path, counts_path, out_dir = ".", cov_grid, counts_out;
  std::string alpha_grid_csv = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  double epsilon = 1.0, alpha = 1.0, cov = 0.0;
  double shuffle_max = 0.5, noise_max = 5.0;
  std::uint64_t seed = 0;
  std::size_t n = 10000, n_shifts = 500, n_bins = 5, workers = 1;

  auto* est = app.add_subcommand("estimate-prior",
                                 "Estimate a smoothed joint prior from counts");
  est->add_option("--counts", counts_path, "pair counts file")->required();
  est->add_option("--epsilon", epsilon, "additive smoothing pseudocount");

  auto* bnd = app.add_subcommand(
      "boundary", "Synthetic decision boundaries across a covariance grid");
  bnd->add_option("--cov-grid", cov_grid, "comma-separated covariances")
      ->required();
  bnd->add_option("--alpha", alpha, "interpolation weight");

  auto* synth = app.add_subcommand(
      "synth-scores", "Emit oracle score records from the synthetic mixture");
  synth->add_option("--out", scores_path, "output scores file")->required();
  synth->add_option("--counts-out", counts_out, "output pair counts file");
  synth->add_option("--n", n, "number of samples");
  synth->add_option("--seed", seed, "rng seed");
  synth->add_option("--cov", cov, "target covariance");

  auto* eval = app.add_subcommand(
      "evaluate", "Evaluate the alpha grid under one sampled shift");
  eval->add_option("--scores", scores_path, "scores file")->required();
  eval->add_option("--counts", counts_path, "pair counts file")->required();
  eval->add_option("--epsilon", epsilon, "additive smoothing pseudocount");
  eval->add_option("--alpha-grid", alpha_grid_csv, "comma-separated alphas");
  eval->add_option("--seed", seed, "rng seed");
  eval->add_option("--shuffle-max", shuffle_max, "max shuffle fraction");
  eval->add_option("--noise-max", noise_max, "max noise sigma");

  auto* sweep =
      app.add_subcommand("sweep", "Full shift-robustness sweep protocol");
  sweep->add_option("--scores", scores_path, "scores file")->required();
  sweep->add_option("--counts", counts_path, "pair counts file")->required();
  sweep->add_option("--out-dir", out_dir, "output directory");
  sweep->add_option("--epsilon", epsilon, "additive smoothing pseudocount");
  sweep->add_option("--alpha-grid", alpha_grid_csv, "comma-separated alphas");
  sweep->add_option("--seed", seed, "rng seed");
  sweep->add_option("--n-shifts", n_shifts, "number of shift replicates");
  sweep->add_option("--n-bins", n_bins, "number of severity bins");
  sweep->add_option("--shuffle-max", shuffle_max, "max shuffle fraction");
  sweep->add_option("--noise-max", noise_max, "max noise sigma");
  sweep->add_option("--workers", workers, "parallel replicate workers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) return cmd_estimate_prior(counts_path, epsilon);
    if (bnd->parsed()) return cmd_boundary(cov_grid, alpha);
    if (synth->parsed())
      return cmd_synth_scores(scores_path, counts_out, n, seed, cov);
    if (eval->parsed())
      return cmd_evaluate(scores_path, counts_path, epsilon, alpha_grid_csv,
                          seed, shuffle_max, noise_max);
    if (sweep->parsed()) {
      gmtl::SweepConfig config;
      config.scores_path = scores_path;
      config.counts_path = counts_path;
      config.out_dir = out_dir;
      config.epsilon = epsilon;
      config.options.alpha_grid = parse_grid(alpha_grid_csv);
      config.options.n_shifts = n_shifts;
      config.options.n_bins = n_bins;
      config.options.seed = seed;
      config.options.shuffle_max = shuffle_max;
      config.options.noise_max = noise_max;
      config.options.workers = workers;
      return cmd_sweep(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
