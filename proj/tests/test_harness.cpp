#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "gmtl/harness.hpp"
#include "gmtl/io.hpp"
#include "gmtl/math_util.hpp"
#include "gmtl/synthetic.hpp"

using namespace gmtl;
namespace fs = std::filesystem;

namespace {

std::vector<ScoreRecord> oracle_records(const MixtureSpec& spec, std::size_t n,
                                        std::uint64_t seed) {
  auto samples = sample_dataset(spec, n, seed);
  std::vector<ScoreRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(oracle_record(spec, samples[i], "e" + std::to_string(i)));
  return out;
}

SweepOptions small_options() {
  SweepOptions opts;
  opts.alpha_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  opts.n_shifts = 40;
  opts.seed = 17;
  return opts;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("sweep options validate the alpha grid") {
  SweepOptions opts;
  opts.alpha_grid = {0.1, 0.5};
  CHECK_THROWS_AS(opts.validate(), Error);
  opts.alpha_grid = {0.0, 0.5, 0.5};
  CHECK_THROWS_AS(opts.validate(), Error);
  opts.alpha_grid = {0.0, 0.5, 1.0};
  CHECK_NOTHROW(opts.validate());
}

TEST_CASE("identity shift sweep carries in-distribution accuracy per alpha") {
  MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
  JointPrior prior = spec.joint_prior();
  auto records = oracle_records(spec, 2000, 21);

  SweepOptions opts = small_options();
  opts.n_shifts = 1;
  opts.shuffle_max = 0.0;
  opts.noise_max = 1e-12;
  SweepResult result = run_sweep(records, prior, opts);

  REQUIRE(result.rows.size() == opts.alpha_grid.size());
  for (std::size_t a = 0; a < opts.alpha_grid.size(); ++a) {
    auto preds = predict_batch(records, prior, Alpha(opts.alpha_grid[a]));
    std::size_t correct = 0;
    for (std::size_t n = 0; n < records.size(); ++n)
      correct += preds[n].y == records[n].label_main;
    CHECK(result.rows[a].weighted_accuracy ==
          doctest::Approx(double(correct) / double(records.size()))
              .epsilon(1e-9));
  }
}

TEST_CASE("alpha 0 rows match independent dmtl accuracy") {
  MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
  JointPrior prior = spec.joint_prior();
  auto records = oracle_records(spec, 1500, 23);
  SweepOptions opts = small_options();
  SweepResult result = run_sweep(records, prior, opts);

  for (std::size_t r = 0; r < opts.n_shifts; ++r) {
    ShiftSpec spec_r({0.0, opts.shuffle_max},
                     {std::min(1e-12, opts.noise_max), opts.noise_max},
                     mix_seed(opts.seed, r));
    ShiftedPrior shifted = sample_shift(prior, spec_r);
    // dmtl_predict_main route, weighted by hand in record order
    const ImportanceWeights w = importance_weights(records, prior, shifted.q);
    KahanSum acc;
    for (std::size_t n = 0; n < records.size(); ++n)
      if (dmtl_predict_main(records[n]) == records[n].label_main)
        acc.add(w.omega[n]);
    const SweepRow& row = result.rows[r * opts.alpha_grid.size()];
    CHECK(row.alpha == 0.0);
    CHECK(row.weighted_accuracy == acc.value());
  }
}

TEST_CASE("per-bin optimal accuracy dominates the alpha 0 accuracy") {
  MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
  JointPrior prior = spec.joint_prior();
  auto records = oracle_records(spec, 1000, 29);
  SweepResult result = run_sweep(records, prior, small_options());
  for (const BinSummary& b : result.bins) {
    if (b.n_replicates == 0) continue;
    CHECK(b.gap >= 0.0);
    CHECK(b.accuracy_at_optimal >= b.accuracy_at_zero);
  }
}

TEST_CASE("sweep is independent of the worker count") {
  MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
  JointPrior prior = spec.joint_prior();
  auto records = oracle_records(spec, 800, 31);
  SweepOptions opts = small_options();
  opts.workers = 1;
  SweepResult a = run_sweep(records, prior, opts);
  opts.workers = 8;
  SweepResult b = run_sweep(records, prior, opts);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].weighted_accuracy == b.rows[i].weighted_accuracy);
    CHECK(a.rows[i].tau == b.rows[i].tau);
    CHECK(a.rows[i].ess == b.rows[i].ess);
  }
}

TEST_CASE("file-based sweep writes byte-identical outputs per seed") {
  MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
  auto records = oracle_records(spec, 500, 37);
  std::vector<std::vector<double>> counts(2, std::vector<double>(2, 0.0));
  for (const ScoreRecord& r : records) counts[r.label_main][r.label_aux] += 1;

  const fs::path dir =
      fs::temp_directory_path() / "gmtl_harness_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_scores(dir / "scores.tsv", records);
  write_counts(dir / "counts.tsv", counts);

  SweepConfig config;
  config.scores_path = dir / "scores.tsv";
  config.counts_path = dir / "counts.tsv";
  config.epsilon = 1.0;
  config.options = small_options();

  config.out_dir = dir / "a";
  run_sweep_files(config);
  config.out_dir = dir / "b";
  config.options.workers = 4;
  run_sweep_files(config);

  const fs::path run = fs::path("runs") / "sweep-seed17";
  for (const char* f : {"sweep.csv", "bins.csv", "shifts.csv"}) {
    CHECK(slurp(dir / "a" / run / f) == slurp(dir / "b" / run / f));
    CHECK_FALSE(slurp(dir / "a" / run / f).empty());
  }
  CHECK(fs::exists(dir / "a" / run / "config.echo"));
  fs::remove_all(dir);
}

TEST_CASE("optimal alpha correlation") {
  SUBCASE("hand-computed five point example") {
    SweepResult result;
    const double mids[5] = {-0.8, -0.4, 0.0, 0.4, 0.8};
    const double alphas[5] = {1.0, 0.8, 0.5, 0.2, 0.0};
    for (int i = 0; i < 5; ++i)
      result.bins.push_back({mids[i], 10, alphas[i], 0.9, 0.8, 0.1});
    Correlation corr = optimal_alpha_correlation(result);
    CHECK_FALSE(corr.zero_variance);
    // by hand: cov = -0.208, var_tau = 0.32, var_alpha = 0.136,
    // r = -1.04 / sqrt(1.6 * 0.68)
    CHECK(corr.value ==
          doctest::Approx(-1.04 / std::sqrt(1.6 * 0.68)).epsilon(1e-12));
  }
  SUBCASE("constant optimal alpha flags zero variance") {
    SweepResult result;
    for (int i = 0; i < 5; ++i)
      result.bins.push_back({double(i), 10, 0.5, 0.9, 0.8, 0.1});
    Correlation corr = optimal_alpha_correlation(result);
    CHECK(corr.zero_variance);
    CHECK(corr.value == 0.0);
  }
  SUBCASE("fewer than two bins is an error") {
    SweepResult result;
    result.bins.push_back({0.0, 10, 0.5, 0.9, 0.8, 0.1});
    CHECK_THROWS_AS(optimal_alpha_correlation(result), Error);
  }
}

TEST_CASE("gap curve") {
  SUBCASE("saturated predictor has zero gaps") {
    MixtureSpec spec = MixtureSpec::reference_defaults(0.2);
    JointPrior prior = spec.joint_prior();
    // posteriors that nail the label for every example make every alpha
    // row 1.0, so each bin's gap is 0
    auto samples = sample_dataset(spec, 400, 41);
    std::vector<ScoreRecord> records;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      ScoreRecord r;
      r.example_id = "c" + std::to_string(i);
      const double hi = std::log(1.0 - 1e-9), lo = std::log(1e-9);
      r.log_post_main = {samples[i].y == 0 ? hi : lo,
                         samples[i].y == 1 ? hi : lo};
      r.log_post_aux = {samples[i].y_prime == 0 ? hi : lo,
                        samples[i].y_prime == 1 ? hi : lo};
      r.label_main = samples[i].y;
      r.label_aux = samples[i].y_prime;
      records.push_back(std::move(r));
    }
    SweepResult result = run_sweep(records, prior, small_options());
    for (const GapPoint& g : gap_curve(result)) CHECK(g.gap == 0.0);
  }
  SUBCASE("uniform prior collapses the gap") {
    MixtureSpec spec = MixtureSpec::reference_defaults(0.0);
    JointPrior prior = spec.joint_prior();  // cov 0, p = p' = 0.5: uniform
    auto records = oracle_records(spec, 600, 43);
    SweepResult result = run_sweep(records, prior, small_options());
    for (const GapPoint& g : gap_curve(result)) CHECK(g.gap == 0.0);
  }
}
