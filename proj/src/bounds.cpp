#include "cnfxor/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cnfxor/error.hpp"
#include "cnfxor/format.hpp"

namespace cnfxor::bounds {

namespace {

void require_k3(unsigned k) {
  if (k < 3) throw InvalidParams("k = " + std::to_string(k) + " unsupported: the lower bound needs k >= 3");
}

void require_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidParams("r must be finite and non-negative");
}

double defining_lhs(double b, unsigned k) { return b * std::pow(2.0 - b, static_cast<double>(k - 1)); }

// ((1 - b/2)^k - 2^-k)^2 / (1 - b)^k
double inner_ratio(unsigned k) {
  const double b = beta(k);
  const double kk = static_cast<double>(k);
  const double numerator = std::pow(1.0 - b / 2.0, kk) - std::ldexp(1.0, -static_cast<int>(k));
  return numerator * numerator / std::pow(1.0 - b, kk);
}

}  // namespace

double beta(unsigned k) {
  require_k3(k);
  double lo = 0.0;
  double hi = 2.0 / static_cast<double>(k);
  for (int i = 0; i < 2000; ++i) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (defining_lhs(mid, k) < 1.0 ? lo : hi) = mid;
  }
  return std::abs(defining_lhs(lo, k) - 1.0) <= std::abs(defining_lhs(hi, k) - 1.0) ? lo : hi;
}

double lambda_lower(unsigned k, double r) {
  require_k3(k);
  require_r(r);
  return 4.0 * std::pow(inner_ratio(k), r);
}

double r_validity_max(unsigned k) {
  const double ln2 = std::numbers::ln2;
  return std::ldexp(1.0, static_cast<int>(k)) * ln2 - 0.5 * ((static_cast<double>(k) + 1.0) * ln2 + 3.0);
}

double lower_slope(unsigned k) {
  require_k3(k);
  return 0.5 * std::log2(inner_ratio(k));
}

double upper_slope(unsigned k) {
  if (k < 2) throw InvalidParams("the upper bound needs k >= 2");
  return std::log2(1.0 - std::ldexp(1.0, -static_cast<int>(k)));
}

LowerValue s_lower(unsigned k, double r, bool allow_extrapolation) {
  require_k3(k);
  require_r(r);
  const bool outside = r >= r_validity_max(k);
  if (outside && !allow_extrapolation)
    throw OutOfValidity("r = " + format_double(r) + " is not below the validity limit " +
                        format_double(r_validity_max(k)) + " for k = " + std::to_string(k));
  // log2(4 x^r) / 2, written so that r = 0 gives exactly 1.
  return {1.0 + r * lower_slope(k), outside};
}

double s_upper(unsigned k, double r) {
  require_r(r);
  return 1.0 + r * upper_slope(k);
}

BoundCurve curve(unsigned k, std::span<const double> r_grid, bool allow_extrapolation) {
  require_k3(k);
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw InvalidParams("r grid must be sorted");
  BoundCurve out;
  out.k = k;
  out.beta_k = beta(k);
  out.r_validity_max = r_validity_max(k);
  for (double r : r_grid) {
    const auto lower = s_lower(k, r, allow_extrapolation);
    BoundSample sample{r, lower.value, s_upper(k, r), lower.extrapolated};
    if (!sample.extrapolated && sample.s_lower > sample.s_upper)
      throw std::logic_error("lower bound exceeds upper bound at r = " + format_double(r));
    out.samples.push_back(sample);
  }
  return out;
}

void write_curve_csv(const BoundCurve& curve, std::ostream& out) {
  out << "r,s_lower,s_upper,extrapolated\n";
  for (const auto& s : curve.samples)
    out << format_double(s.r) << ',' << format_double(s.s_lower) << ',' << format_double(s.s_upper) << ','
        << (s.extrapolated ? "true" : "false") << '\n';
  if (!out) throw std::runtime_error("failed to write bound curve CSV");
}

}  // namespace cnfxor::bounds
