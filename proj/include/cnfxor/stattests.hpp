#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "cnfxor/formula.hpp"

namespace cnfxor {

/// Samples m XOR clauses over n variables. Clause j uses the same stream as
/// clause j of sample_formula(.., seed), so this is the XOR half of a formula.
std::vector<XorClause> sample_xor_clauses(Var n, std::uint64_t m, std::uint64_t seed);

/// True iff the conjunction of the XOR clauses and the fixed values
/// x_v = value (given as literals) has a solution.
bool xor_system_satisfiable(Var n, const std::vector<XorClause>& xors, const std::vector<Literal>& fixed);

// ---------------------------------------------------------------------------
// Pairwise independence of XOR solutions

struct PairwiseTolerances {
  double single = 0.005;       // |P(sigma sat) - 2^-m|
  double joint = 0.003;        // |P(both sat) - 2^-2m|
  double conditional = 0.01;   // |P(sigma sat | sigma' sat) - 2^-m|
};

struct PairwiseReport {
  Var n = 0;
  std::uint64_t m_xor = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<bool> sigma;        // all false
  std::vector<bool> sigma_prime;  // x1 true, rest false
  std::uint64_t sigma_sat = 0;
  std::uint64_t sigma_prime_sat = 0;
  std::uint64_t both_sat = 0;
  double expected_single = 0.0;
  double expected_joint = 0.0;
  double p_single = 0.0;
  double p_conditional = 0.0;
  double p_joint = 0.0;
  PairwiseTolerances tolerances;
  bool pass = false;
};

/// Throws InsufficientConditioningEvents when sigma' satisfied fewer than
/// 100 sampled systems.
PairwiseReport test_xor_pairwise_independence(Var n, std::uint64_t m_xor, std::uint64_t samples,
                                              std::uint64_t seed, PairwiseTolerances tolerances = {});

// ---------------------------------------------------------------------------
// Satisfiability of H AND Q given #H

enum class ResidualDirection {
  SatGivenMany,    // #H = 2^(m + alpha): P(sat) >= 1 - 2^-alpha
  UnsatGivenFew,   // #H = 2^(m - alpha): P(unsat) >= 1 - 2^-alpha
};

struct ResidualReport {
  ResidualDirection direction = ResidualDirection::SatGivenMany;
  Var n = 0;
  double s = 0.0;
  std::uint64_t m_xor = 0;
  unsigned alpha = 0;
  unsigned log2_count_h = 0;  // H fixes x_{d+1..n} to false, so #H = 2^d
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t events = 0;   // sat draws (SatGivenMany) or unsat draws (UnsatGivenFew)
  double frequency = 0.0;
  double confidence = 0.99;
  double lower_bound = 0.0;   // one-sided Wilson
  double slack = 0.01;
  double threshold = 0.0;     // 1 - 2^-alpha - slack
  bool pass = false;
};

/// Throws InvalidParams when the required #H does not fit in [1, 2^n].
ResidualReport test_residual_sat_bound(Var n, double s, unsigned alpha, std::uint64_t samples,
                                       std::uint64_t seed,
                                       ResidualDirection direction = ResidualDirection::SatGivenMany);

// ---------------------------------------------------------------------------
// Markov tail on #F

struct MarkovReport {
  std::uint32_t k = 0;
  double r = 0.0;
  Var n = 0;
  double epsilon = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double log2_bound = 0.0;  // n * log2(2 eps (1 - 2^-k)^r)
  std::uint64_t below_bound = 0;
  std::uint64_t violations = 0;
  double violation_frequency = 0.0;
  double tail = 0.0;        // eps^-n
  double confidence = 0.99;
  double lower_bound = 0.0; // one-sided Wilson on the holding frequency
  double slack = 0.01;
  double threshold = 0.0;   // 1 - eps^-n - slack
  bool pass = false;
};

/// Requires epsilon > 1; count_exact guards apply to every draw.
MarkovReport test_markov_count_bound(std::uint32_t k, double r, Var n, double epsilon, std::uint64_t samples,
                                     std::uint64_t seed);

nlohmann::json report_json(const PairwiseReport& report);
nlohmann::json report_json(const ResidualReport& report);
nlohmann::json report_json(const MarkovReport& report);

}  // namespace cnfxor
