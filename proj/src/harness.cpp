#include "gmtl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "gmtl/io.hpp"
#include "gmtl/math_util.hpp"
#include "gmtl/rank.hpp"

namespace gmtl {

void SweepOptions::validate() const {
  if (alpha_grid.empty() || alpha_grid.front() != 0.0)
    throw Error("SweepOptions: alpha grid must start at 0");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (alpha_grid[i] < 0.0 || alpha_grid[i] > 1.0)
      throw Error("SweepOptions: alpha values must lie in [0, 1]");
    if (i > 0 && alpha_grid[i] <= alpha_grid[i - 1])
      throw Error("SweepOptions: alpha grid must be strictly increasing");
  }
  if (n_shifts == 0) throw Error("SweepOptions: n_shifts must be positive");
  if (n_bins < 2) throw Error("SweepOptions: n_bins must be at least 2");
  if (workers == 0) throw Error("SweepOptions: workers must be positive");
}

namespace {

struct ReplicateResult {
  double shuffle_fraction;
  double noise_sigma;
  double tau;
  double ess;
  std::vector<double> accuracy;  // per alpha
};

}  // namespace

SweepResult run_sweep(const std::vector<ScoreRecord>& records,
                      const JointPrior& prior, const SweepOptions& options) {
  options.validate();
  if (records.empty()) throw Error("run_sweep: no score records");

  // predictions depend on alpha only, so compute them once up front
  std::vector<std::vector<Prediction>> predictions;
  predictions.reserve(options.alpha_grid.size());
  for (double a : options.alpha_grid)
    predictions.push_back(predict_batch(records, prior, Alpha(a)));

  std::vector<ReplicateResult> reps(options.n_shifts);
  auto run_replicate = [&](std::size_t r) {
    ShiftSpec spec({0.0, options.shuffle_max},
                   {std::min(1e-12, options.noise_max), options.noise_max},
                   mix_seed(options.seed, r));
    ShiftedPrior shifted = sample_shift(prior, spec);
    ReplicateResult& out = reps[r];
    out.shuffle_fraction = shifted.shuffle_fraction;
    out.noise_sigma = shifted.noise_sigma;
    out.tau = shifted.tau_vs_base;
    out.ess = effective_sample_size(
        importance_weights(records, prior, shifted.q));
    out.accuracy.resize(options.alpha_grid.size());
    for (std::size_t a = 0; a < options.alpha_grid.size(); ++a)
      out.accuracy[a] = importance_weighted_accuracy(
          records, predictions[a], prior, shifted.q, Task::main);
  };

  if (options.workers <= 1) {
    for (std::size_t r = 0; r < options.n_shifts; ++r) run_replicate(r);
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(options.workers, options.n_shifts);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < options.n_shifts; r += workers)
          run_replicate(r);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  SweepResult result;
  std::vector<double> taus(options.n_shifts);
  for (std::size_t r = 0; r < options.n_shifts; ++r) {
    taus[r] = reps[r].tau;
    result.shifts.push_back({r, reps[r].shuffle_fraction, reps[r].noise_sigma,
                             reps[r].tau, reps[r].ess});
    for (std::size_t a = 0; a < options.alpha_grid.size(); ++a)
      result.rows.push_back({r, reps[r].tau, options.alpha_grid[a],
                             reps[r].accuracy[a], reps[r].ess});
  }

  const SeverityBins bins = severity_bins(taus, options.n_bins);
  result.bin_edges = bins.edges;
  result.degenerate_bins = bins.degenerate;
  const std::size_t n_bins = bins.midpoints.size();

  for (std::size_t b = 0; b < n_bins; ++b) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < options.n_shifts; ++r)
      if (bins.assignments[r] == b) members.push_back(r);
    BinSummary summary{};
    summary.tau_midpoint = bins.midpoints[b];
    summary.n_replicates = members.size();
    if (members.empty()) {
      summary.optimal_alpha = std::nan("");
      summary.accuracy_at_optimal = std::nan("");
      summary.accuracy_at_zero = std::nan("");
      summary.gap = std::nan("");
      result.bins.push_back(summary);
      continue;
    }
    std::vector<double> mean_acc(options.alpha_grid.size());
    for (std::size_t a = 0; a < options.alpha_grid.size(); ++a) {
      KahanSum s;
      for (std::size_t r : members) s.add(reps[r].accuracy[a]);
      mean_acc[a] = s.value() / double(members.size());
    }
    std::size_t best = 0;  // ties to the smallest alpha
    for (std::size_t a = 1; a < mean_acc.size(); ++a)
      if (mean_acc[a] > mean_acc[best]) best = a;
    summary.optimal_alpha = options.alpha_grid[best];
    summary.accuracy_at_optimal = mean_acc[best];
    summary.accuracy_at_zero = mean_acc[0];
    summary.gap = mean_acc[best] - mean_acc[0];
    result.bins.push_back(summary);
  }
  return result;
}

namespace {

void write_sweep_csv(const std::filesystem::path& path,
                     const SweepResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "replicate,tau,alpha,weighted_accuracy,ess\n";
  for (const SweepRow& row : result.rows)
    out << row.replicate << ',' << format_real(row.tau) << ','
        << format_real(row.alpha) << ',' << format_real(row.weighted_accuracy)
        << ',' << format_real(row.ess) << '\n';
}

void write_bins_csv(const std::filesystem::path& path,
                    const SweepResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "tau_midpoint,n_replicates,optimal_alpha,accuracy_at_optimal,"
         "accuracy_at_zero,gap\n";
  for (const BinSummary& b : result.bins)
    out << format_real(b.tau_midpoint) << ',' << b.n_replicates << ','
        << format_real(b.optimal_alpha) << ','
        << format_real(b.accuracy_at_optimal) << ','
        << format_real(b.accuracy_at_zero) << ',' << format_real(b.gap)
        << '\n';
}

void write_shifts_csv(const std::filesystem::path& path,
                      const SweepResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "replicate,shuffle_fraction,noise_sigma,tau,ess\n";
  for (const ShiftAudit& s : result.shifts)
    out << s.replicate << ',' << format_real(s.shuffle_fraction) << ','
        << format_real(s.noise_sigma) << ',' << format_real(s.tau) << ','
        << format_real(s.ess) << '\n';
}

void write_config_echo(const std::filesystem::path& path,
                       const SweepConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "scores = " << config.scores_path.string() << '\n'
      << "counts = " << config.counts_path.string() << '\n'
      << "epsilon = " << format_real(config.epsilon) << '\n'
      << "seed = " << config.options.seed << '\n'
      << "n_shifts = " << config.options.n_shifts << '\n'
      << "n_bins = " << config.options.n_bins << '\n'
      << "shuffle_max = " << format_real(config.options.shuffle_max) << '\n'
      << "noise_max = " << format_real(config.options.noise_max) << '\n'
      << "workers = " << config.options.workers << '\n';
  out << "alpha_grid = ";
  for (std::size_t i = 0; i < config.options.alpha_grid.size(); ++i)
    out << (i ? "," : "") << format_real(config.options.alpha_grid[i]);
  out << '\n';
}

}  // namespace

SweepResult run_sweep_files(const SweepConfig& config) {
  const TargetSpace space = scores_target_space(config.scores_path);
  const std::vector<ScoreRecord> records =
      read_scores(config.scores_path, space);
  const auto counts = read_counts(config.counts_path);
  if (counts.size() != space.main_cardinality() ||
      counts[0].size() != space.aux_cardinality())
    throw Error("run_sweep_files: counts shape does not match scores");
  const JointPrior prior = estimate_prior(space, counts, config.epsilon);

  SweepResult result = run_sweep(records, prior, config.options);

  std::ostringstream run_id;
  run_id << "sweep-seed" << config.options.seed;
  const std::filesystem::path run_dir =
      config.out_dir / "runs" / run_id.str();
  std::filesystem::create_directories(run_dir);
  write_sweep_csv(run_dir / "sweep.csv", result);
  write_bins_csv(run_dir / "bins.csv", result);
  write_shifts_csv(run_dir / "shifts.csv", result);
  write_config_echo(run_dir / "config.echo", config);
  return result;
}

Correlation optimal_alpha_correlation(const SweepResult& result) {
  std::vector<double> xs, ys;
  for (const BinSummary& b : result.bins) {
    if (b.n_replicates == 0) continue;
    xs.push_back(b.tau_midpoint);
    ys.push_back(b.optimal_alpha);
  }
  if (xs.size() < 2)
    throw Error("optimal_alpha_correlation: need at least 2 non-empty bins");
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {sxy / std::sqrt(sxx * syy), false};
}

std::vector<GapPoint> gap_curve(const SweepResult& result) {
  std::vector<GapPoint> out;
  for (const BinSummary& b : result.bins)
    if (b.n_replicates > 0) out.push_back({b.tau_midpoint, b.gap});
  return out;
}

}  // namespace gmtl
