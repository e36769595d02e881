#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "gmtl/io.hpp"
#include "gmtl/synthetic.hpp"

using namespace gmtl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() /
           ("gmtl_io_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("counts round-trip") {
  TempDir dir;
  const fs::path p = dir.path / "counts.tsv";
  std::vector<std::vector<double>> counts = {{3, 0, 7}, {1, 2, 9}};
  write_counts(p, counts);
  CHECK(read_counts(p) == counts);
}

TEST_CASE("counts parse errors name file and line") {
  TempDir dir;
  const fs::path p = dir.path / "bad.tsv";
  write_file(p, "y\ty_prime\tcount\n0\t0\t5\n0\tone\t2\n");
  CHECK_THROWS_WITH_AS(read_counts(p), doctest::Contains("bad.tsv:3"), Error);
  write_file(p, "y\ty_prime\tcount\n0\t0\t-5\n");
  CHECK_THROWS_AS(read_counts(p), Error);
  write_file(p, "");
  CHECK_THROWS_AS(read_counts(p), Error);
}

TEST_CASE("scores round-trip preserves every value") {
  TempDir dir;
  const fs::path p = dir.path / "scores.tsv";
  MixtureSpec spec = MixtureSpec::reference_defaults(0.1);
  auto samples = sample_dataset(spec, 50, 9);
  std::vector<ScoreRecord> records;
  for (std::size_t i = 0; i < samples.size(); ++i)
    records.push_back(oracle_record(spec, samples[i], "id" + std::to_string(i)));
  write_scores(p, records);

  TargetSpace space = scores_target_space(p);
  CHECK(space.main_cardinality() == 2);
  CHECK(space.aux_cardinality() == 2);
  auto back = read_scores(p, space);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].example_id == records[i].example_id);
    CHECK(back[i].label_main == records[i].label_main);
    CHECK(back[i].label_aux == records[i].label_aux);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(back[i].log_post_main[j] == records[i].log_post_main[j]);
      CHECK(back[i].log_post_aux[j] == records[i].log_post_aux[j]);
    }
  }
}

TEST_CASE("scores validation failures name file and line") {
  TempDir dir;
  const fs::path p = dir.path / "scores.tsv";
  // second record does not normalize
  write_file(p,
             "example_id\tlog_post_main\tlog_post_aux\tlabel_main\tlabel_aux\n"
             "a\t-0.693147180559945,-0.693147180559945\t"
             "-0.693147180559945,-0.693147180559945\t0\t1\n"
             "b\t-0.1,-0.1\t-0.693147180559945,-0.693147180559945\t1\t0\n");
  CHECK_THROWS_WITH_AS(read_scores(p, TargetSpace(2, 2)),
                       doctest::Contains(":3"), Error);
}

TEST_CASE("missing file is reported") {
  CHECK_THROWS_AS(read_counts("/nonexistent/counts.tsv"), Error);
  CHECK_THROWS_AS(read_scores("/nonexistent/scores.tsv", TargetSpace(2, 2)),
                  Error);
}
