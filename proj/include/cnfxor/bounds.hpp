#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace cnfxor::bounds {

/// Smallest positive root of b (2 - b)^(k-1) = 1, found by bisection on
/// (0, 2/k] where the left side is strictly increasing. Requires k >= 3.
double beta(unsigned k);

/// Lambda_b(k, r) = 4 * (((1 - b/2)^k - 2^-k)^2 / (1 - b)^k)^r with b = beta(k).
double lambda_lower(unsigned k, double r);

/// Largest r (exclusive) for which the lower curve is established:
/// 2^k ln 2 - ((k + 1) ln 2 + 3) / 2.
double r_validity_max(unsigned k);

/// d s_lower / d r = log2(((1 - b/2)^k - 2^-k)^2 / (1 - b)^k) / 2.
double lower_slope(unsigned k);
/// d s_upper / d r = log2(1 - 2^-k).
double upper_slope(unsigned k);

struct LowerValue {
  double value = 0.0;
  bool extrapolated = false;
};

/// log2(Lambda_b(k, r)) / 2. Beyond r_validity_max throws OutOfValidity
/// unless allow_extrapolation is set, in which case the value is flagged.
LowerValue s_lower(unsigned k, double r, bool allow_extrapolation = false);

/// r log2(1 - 2^-k) + 1. Requires k >= 2.
double s_upper(unsigned k, double r);

struct BoundSample {
  double r = 0.0;
  double s_lower = 0.0;
  double s_upper = 0.0;
  bool extrapolated = false;
};

struct BoundCurve {
  unsigned k = 0;
  double beta_k = 0.0;
  double r_validity_max = 0.0;
  std::vector<BoundSample> samples;
};

/// Samples both curves on a sorted grid. Throws std::logic_error if the
/// lower curve ever exceeds the upper one inside the validity region.
BoundCurve curve(unsigned k, std::span<const double> r_grid, bool allow_extrapolation = false);

/// CSV with header "r,s_lower,s_upper,extrapolated".
void write_curve_csv(const BoundCurve& curve, std::ostream& out);

}  // namespace cnfxor::bounds
