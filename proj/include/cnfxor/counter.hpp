#pragma once

#include <cstdint>
#include <string_view>

#include "cnfxor/formula.hpp"
#include "cnfxor/gf2.hpp"

namespace cnfxor {

enum class CountMethod { XorAffineEnumeration, FullEnumeration };

std::string_view to_string(CountMethod method) noexcept;

struct CountResult {
  BigCount count;
  Var n = 0;
  CountMethod method = CountMethod::FullEnumeration;
};

/// Largest free dimension (n - XOR rank) enumerated over the XOR solution space.
inline constexpr std::size_t kMaxAffineDimension = 26;
/// Largest n swept exhaustively.
inline constexpr std::size_t kMaxFullSweepVariables = 26;

/// Exact #F. The XOR part is reduced to an affine space whose 2^(n - rank)
/// points are filtered by the k-clauses; formulas without XOR clauses are
/// swept over all 2^n assignments. Throws GuardExceeded when neither route
/// fits its limit.
CountResult count_exact(const Formula& formula);

/// Exhaustive sweep over all 2^n assignments without any XOR reduction.
/// Requires n <= kMaxFullSweepVariables.
BigCount count_full_sweep(const Formula& formula);

/// log2 of a positive exact count: bit length plus the log of the leading
/// 53 bits, accurate far below 1e-12 relative error.
double log2_exact(const BigCount& count);

/// Finite-n proxy for the free-entropy density: the mean of log2(#F)/n over
/// the satisfiable draws of F_k(n, rn).
struct PhiEstimate {
  std::uint32_t k = 0;
  double r = 0.0;
  Var n = 0;
  std::uint64_t trials = 0;
  std::uint64_t sat_trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Trial t samples its formula with seed derive_seed(seed, {t}). Throws
/// NoSatInstances when every draw is unsatisfiable.
PhiEstimate estimate_phi(std::uint32_t k, double r, Var n, std::uint64_t trials, std::uint64_t seed);

}  // namespace cnfxor
