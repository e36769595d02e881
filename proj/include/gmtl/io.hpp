#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gmtl/inference.hpp"
#include "gmtl/prior.hpp"

namespace gmtl {

/// Formats a real with enough digits to round-trip; output is stable
/// across runs and worker counts.
std::string format_real(double v);

/// Tab-separated pair counts with header `y\ty_prime\tcount`. Cardinality
/// is inferred as 1 + max label per task. Parse errors name the file and
/// line.
std::vector<std::vector<double>> read_counts(const std::filesystem::path& path);
void write_counts(const std::filesystem::path& path,
                  const std::vector<std::vector<double>>& counts);

/// Tab-separated score records, one example per line:
/// example_id, comma-separated log_post_main, comma-separated log_post_aux,
/// label_main, label_aux. Header line names the fields. Records are
/// validated against `space`.
std::vector<ScoreRecord> read_scores(const std::filesystem::path& path,
                                     const TargetSpace& space);
void write_scores(const std::filesystem::path& path,
                  const std::vector<ScoreRecord>& records);

/// Infers the target space from a scores file (posterior vector lengths of
/// the first record).
TargetSpace scores_target_space(const std::filesystem::path& path);

}  // namespace gmtl
