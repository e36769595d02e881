#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gmtl/inference.hpp"
#include "gmtl/prior.hpp"
#include "gmtl/shift.hpp"

namespace gmtl {

struct SweepOptions {
  std::vector<double> alpha_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t n_shifts = 500;
  std::size_t n_bins = 5;
  std::uint64_t seed = 0;
  double shuffle_max = 0.5;
  double noise_max = 5.0;
  std::size_t workers = 1;
  bool report_aux = false;

  void validate() const;
};

struct SweepConfig {
  std::filesystem::path scores_path;
  std::filesystem::path counts_path;
  std::filesystem::path out_dir;
  double epsilon = 1.0;
  SweepOptions options;
};

struct SweepRow {
  std::size_t replicate;
  double tau;
  double alpha;
  double weighted_accuracy;
  double ess;
};

struct BinSummary {
  double tau_midpoint;
  std::size_t n_replicates;
  double optimal_alpha;
  double accuracy_at_optimal;
  double accuracy_at_zero;
  double gap;  // accuracy_at_optimal - accuracy_at_zero, >= 0
};

struct ShiftAudit {
  std::size_t replicate;
  double shuffle_fraction;
  double noise_sigma;
  double tau;
  double ess;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<ShiftAudit> shifts;
  std::vector<BinSummary> bins;  // ascending tau midpoint
  std::vector<double> bin_edges;
  bool degenerate_bins = false;
};

/// Full shift-robustness protocol: sample n_shifts shifted priors, compute
/// tau per shift, importance-weighted main-task accuracy per (shift,
/// alpha), bin by tau, and report the per-bin optimal alpha and
/// GMTL-DMTL gap. Deterministic given (records, prior, options);
/// independent of the worker count.
SweepResult run_sweep(const std::vector<ScoreRecord>& records,
                      const JointPrior& prior, const SweepOptions& options);

/// File-based wrapper: reads scores and counts, runs the sweep, and writes
/// sweep.csv, bins.csv, shifts.csv, and config.echo under
/// out_dir/runs/<run-id>/. The run id is derived from the seed.
SweepResult run_sweep_files(const SweepConfig& config);

struct Correlation {
  double value = 0.0;
  bool zero_variance = false;
};

/// Pearson correlation between bin tau midpoints and per-bin optimal
/// alpha. Zero variance in either coordinate yields 0 with the flag set.
Correlation optimal_alpha_correlation(const SweepResult& result);

struct GapPoint {
  double tau_midpoint;
  double gap;
};

std::vector<GapPoint> gap_curve(const SweepResult& result);

}  // namespace gmtl
