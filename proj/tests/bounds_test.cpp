#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <sstream>

#include "cnfxor/bounds.hpp"
#include "cnfxor/error.hpp"

namespace cnfxor {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Values frozen from an independent 40-digit evaluation.
struct Reference {
  unsigned k;
  double beta;
  double lower_slope;
  double upper_slope;
  double r_max;
};

constexpr Reference kReference[] = {
    {3, 0.3819660112501051518, -0.26439521592345674565, -0.19264507794239589256, 2.6588830833596718565},
    {4, 0.16071324478583886745, -0.10979645410899337851, -0.093109404391481470676, 7.8574869375592616771},
    {5, 0.072438024517074695738, -0.050164389410000822691, -0.045803689613124791194, 18.601268236238413973},
    {8, 0.0080358033949649789023, -0.0057378472077609904817, -0.0056465631411420624219, 172.82651591082624532},
    {10, 0.0019705297377133013377, -0.0014165244217537567219, -0.0014095702546713535408, 704.47040340030429764},
    {16, 0.000030524565496707639811, -0.000022016635190165226896, -0.000022013947263955502017,
     45418.701874141816263},
};

// Root of b(2-b)^(k-1) = 1 by high-precision bisection.
Big big_beta(unsigned k) {
  Big lo = 0, hi = Big(2) / k;
  for (int i = 0; i < 200; ++i) {
    const Big mid = (lo + hi) / 2;
    (mid * pow(2 - mid, k - 1) < 1 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

Big big_lower_slope(unsigned k) {
  const Big b = big_beta(k);
  const Big inner = pow(pow(1 - b / 2, k) - pow(Big(2), -static_cast<int>(k)), 2) / pow(1 - b, k);
  return log(inner) / log(Big(2)) / 2;
}

TEST(Bounds, BetaMatchesReference) {
  for (const auto& ref : kReference) {
    EXPECT_NEAR(bounds::beta(ref.k), ref.beta, 1e-12) << ref.k;
    EXPECT_NEAR(bounds::beta(ref.k), big_beta(ref.k).convert_to<double>(), 1e-12) << ref.k;
  }
  EXPECT_NEAR(bounds::beta(3), (3 - std::sqrt(5.0)) / 2, 1e-15);
}

TEST(Bounds, BetaResidual) {
  for (unsigned k = 3; k <= 16; ++k) {
    const double b = bounds::beta(k);
    EXPECT_LT(std::abs(b * std::pow(2 - b, k - 1) - 1), 1e-12) << k;
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, 2.0 / k);
  }
  EXPECT_THROW(bounds::beta(2), InvalidParams);
}

TEST(Bounds, SlopesMatchReference) {
  for (const auto& ref : kReference) {
    EXPECT_NEAR(bounds::lower_slope(ref.k), ref.lower_slope, 1e-12) << ref.k;
    EXPECT_NEAR(bounds::upper_slope(ref.k), ref.upper_slope, 1e-14) << ref.k;
    EXPECT_NEAR(bounds::r_validity_max(ref.k), ref.r_max, 1e-9 * ref.r_max) << ref.k;
    EXPECT_NEAR(bounds::lower_slope(ref.k), big_lower_slope(ref.k).convert_to<double>(), 1e-12) << ref.k;
  }
}

TEST(Bounds, LambdaValues) {
  for (unsigned k = 3; k <= 16; ++k) EXPECT_DOUBLE_EQ(bounds::lambda_lower(k, 0.0), 4.0);
  EXPECT_NEAR(bounds::lambda_lower(3, 1.0), 2.7725424859373685603, 1e-12);
  double previous = bounds::lambda_lower(3, 0.0);
  for (double r = 0.1; r < 2.6; r += 0.1) {
    const double value = bounds::lambda_lower(3, r);
    EXPECT_LT(value, previous);
    EXPECT_GT(value, 0.0);
    previous = value;
  }
  EXPECT_THROW(bounds::lambda_lower(3, -1.0), InvalidParams);
}

TEST(Bounds, CurvesMeetAtZero) {
  for (unsigned k = 3; k <= 16; ++k) {
    EXPECT_NEAR(bounds::s_lower(k, 0.0).value, 1.0, 1e-12);
    EXPECT_NEAR(bounds::s_upper(k, 0.0), 1.0, 1e-12);
  }
  EXPECT_NEAR(bounds::s_upper(2, 0.0), 1.0, 1e-12);
}

TEST(Bounds, UpperCurveForThreeSat) {
  EXPECT_NEAR(bounds::s_upper(3, 1.0), 1 + std::log2(7.0 / 8.0), 1e-15);
  EXPECT_NEAR(bounds::upper_slope(3), -0.1926450, 1e-7);
}

TEST(Bounds, SandwichAcrossValidity) {
  for (unsigned k = 3; k <= 16; ++k) {
    const double r_max = bounds::r_validity_max(k);
    for (int i = 0; i < 200; ++i) {
      const double r = r_max * i / 200.0;
      const auto lower = bounds::s_lower(k, r);
      EXPECT_FALSE(lower.extrapolated);
      EXPECT_LE(lower.value, bounds::s_upper(k, r)) << "k=" << k << " r=" << r;
    }
  }
}

TEST(Bounds, CurvesAreAffine) {
  for (unsigned k = 3; k <= 16; ++k) {
    const double r_max = bounds::r_validity_max(k);
    const double a = 0.1 * r_max, b = 0.4 * r_max, c = 0.9 * r_max;
    auto collinear = [&](auto f) {
      const double left = (f(b) - f(a)) / (b - a);
      const double right = (f(c) - f(b)) / (c - b);
      return std::abs(left - right);
    };
    EXPECT_LT(collinear([&](double r) { return bounds::s_lower(k, r).value; }), 1e-10) << k;
    EXPECT_LT(collinear([&](double r) { return bounds::s_upper(k, r); }), 1e-10) << k;
  }
}

TEST(Bounds, ValidityLimit) {
  EXPECT_THROW(bounds::s_lower(3, 2.7), OutOfValidity);
  const auto extrapolated = bounds::s_lower(3, 2.7, true);
  EXPECT_TRUE(extrapolated.extrapolated);
  EXPECT_NEAR(extrapolated.value, 1 + 2.7 * bounds::lower_slope(3), 1e-12);
  EXPECT_THROW(bounds::s_lower(2, 0.5), InvalidParams);
  EXPECT_THROW(bounds::s_upper(1, 0.5), InvalidParams);
}

TEST(Bounds, CurveRows) {
  const double grid[] = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  const auto c = bounds::curve(3, grid);
  ASSERT_EQ(c.samples.size(), 6U);
  for (const auto& row : c.samples) EXPECT_LE(row.s_lower, row.s_upper);

  const double zero[] = {0.0};
  const auto single = bounds::curve(3, zero);
  ASSERT_EQ(single.samples.size(), 1U);
  EXPECT_EQ(single.samples[0].s_lower, 1.0);
  EXPECT_EQ(single.samples[0].s_upper, 1.0);

  const double k8[] = {0.0, 50.0, 100.0, 170.0};
  for (const auto& row : bounds::curve(8, k8).samples) EXPECT_LE(row.s_lower, row.s_upper);

  const double unsorted[] = {1.0, 0.5};
  EXPECT_THROW(bounds::curve(3, unsorted), InvalidParams);
  const double beyond[] = {0.0, 3.0};
  EXPECT_THROW(bounds::curve(3, beyond), OutOfValidity);
  EXPECT_TRUE(bounds::curve(3, beyond, true).samples[1].extrapolated);
}

TEST(Bounds, CurveCsv) {
  const double grid[] = {0.0, 0.5};
  std::ostringstream out;
  bounds::write_curve_csv(bounds::curve(3, grid), out);
  const auto text = out.str();
  EXPECT_EQ(text.rfind("r,s_lower,s_upper,extrapolated\n0,1,1,false\n0.5,", 0), 0U) << text;
}

}  // namespace
}  // namespace cnfxor
