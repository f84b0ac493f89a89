#include "cnfxor/statistics.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "cnfxor/error.hpp"

namespace cnfxor::stats {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParams("normal_quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw InvalidParams("wilson: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  const double denom = 1.0 + z2 / n;
  Interval out{(centre - spread) / denom, (centre + spread) / denom};
  // Exact endpoints at the boundaries; the formula can be off by rounding.
  if (successes == 0) out.low = 0.0;
  if (successes == trials) out.high = 1.0;
  return out;
}

Interval wilson_two_sided(std::uint64_t successes, std::uint64_t trials, double confidence) {
  return wilson(successes, trials, normal_quantile(0.5 + confidence / 2.0));
}

double wilson_lower(std::uint64_t successes, std::uint64_t trials, double confidence) {
  return wilson(successes, trials, normal_quantile(confidence)).low;
}

double wilson_upper(std::uint64_t successes, std::uint64_t trials, double confidence) {
  return wilson(successes, trials, normal_quantile(confidence)).high;
}

MeanAndError mean_and_stderr(std::span<const double> values) {
  MeanAndError out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double count = static_cast<double>(values.size());
  out.mean = sum / count;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  return out;
}

}  // namespace cnfxor::stats
