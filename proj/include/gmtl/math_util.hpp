#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace gmtl {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Compensated (Kahan) accumulator. Summation order is part of the
/// contract wherever bit-stable results are required.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double log_sum_exp(std::span<const double> logs) {
  double m = kNegInf;
  for (double v : logs) m = std::max(m, v);
  if (std::isinf(m) && m < 0) return kNegInf;
  KahanSum s;
  for (double v : logs) s.add(std::exp(v - m));
  return m + std::log(s.value());
}

/// log N(x; mean, var), var > 0.
inline double log_normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * M_PI * var) + d * d / var);
}

/// splitmix64 step; used to derive independent per-replicate seeds from a
/// master seed without correlated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

}  // namespace gmtl
