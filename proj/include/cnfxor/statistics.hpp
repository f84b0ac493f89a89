#pragma once

#include <cstdint>
#include <span>

namespace cnfxor::stats {

struct Interval {
  double low = 0.0;
  double high = 1.0;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Standard normal quantile.
double normal_quantile(double p);

/// Wilson score interval for a binomial proportion with critical value z.
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z);

/// Two-sided Wilson interval at the given confidence (e.g. 0.95).
Interval wilson_two_sided(std::uint64_t successes, std::uint64_t trials, double confidence);

/// One-sided Wilson bounds at the given confidence (e.g. 0.99).
double wilson_lower(std::uint64_t successes, std::uint64_t trials, double confidence);
double wilson_upper(std::uint64_t successes, std::uint64_t trials, double confidence);

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count); 0 for a single value
};

MeanAndError mean_and_stderr(std::span<const double> values);

}  // namespace cnfxor::stats
