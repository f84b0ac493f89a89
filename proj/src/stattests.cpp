#include "cnfxor/stattests.hpp"

#include <cmath>
#include <string>

#include "cnfxor/counter.hpp"
#include "cnfxor/error.hpp"
#include "cnfxor/gf2.hpp"
#include "cnfxor/statistics.hpp"

namespace cnfxor {

std::vector<XorClause> sample_xor_clauses(Var n, std::uint64_t m, std::uint64_t seed) {
  std::vector<XorClause> out;
  out.reserve(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::XorClause), j}));
    out.push_back(sample_xor_clause(n, rng));
  }
  return out;
}

bool xor_system_satisfiable(Var n, const std::vector<XorClause>& xors, const std::vector<Literal>& fixed) {
  gf2::System system(n);
  std::vector<std::size_t> columns;
  for (const auto& x : xors) {
    columns.clear();
    for (auto v : x.vars) columns.push_back(v - 1);
    system.add_equation(columns, x.rhs);
  }
  for (auto lit : fixed) {
    const std::size_t column = lit.variable - 1;
    system.add_equation({&column, 1}, !lit.negated);
  }
  return gf2::row_reduce(system).consistent;
}

namespace {

bool satisfied_by_zero(const XorClause& x) { return !x.rhs; }

// Only x1 is true.
bool satisfied_by_first(const XorClause& x) {
  const bool has_first = !x.vars.empty() && x.vars.front() == 1;
  return has_first == x.rhs;
}

}  // namespace

PairwiseReport test_xor_pairwise_independence(Var n, std::uint64_t m_xor, std::uint64_t samples,
                                              std::uint64_t seed, PairwiseTolerances tolerances) {
  if (n < 1) throw InvalidParams("pairwise test needs n >= 1");
  if (samples == 0) throw InvalidParams("pairwise test needs samples > 0");
  PairwiseReport report;
  report.n = n;
  report.m_xor = m_xor;
  report.samples = samples;
  report.seed = seed;
  report.tolerances = tolerances;
  report.sigma.assign(n, false);
  report.sigma_prime.assign(n, false);
  report.sigma_prime[0] = true;

  for (std::uint64_t t = 0; t < samples; ++t) {
    const auto q = sample_xor_clauses(n, m_xor, derive_seed(seed, {t}));
    bool first = true;
    bool second = true;
    for (const auto& x : q) {
      first = first && satisfied_by_zero(x);
      second = second && satisfied_by_first(x);
    }
    report.sigma_sat += first;
    report.sigma_prime_sat += second;
    report.both_sat += first && second;
  }
  if (report.sigma_prime_sat < 100)
    throw InsufficientConditioningEvents("sigma' satisfied only " + std::to_string(report.sigma_prime_sat) +
                                         " of " + std::to_string(samples) + " systems (need 100)");

  const double total = static_cast<double>(samples);
  report.expected_single = std::ldexp(1.0, -static_cast<int>(m_xor));
  report.expected_joint = report.expected_single * report.expected_single;
  report.p_single = static_cast<double>(report.sigma_sat) / total;
  report.p_joint = static_cast<double>(report.both_sat) / total;
  report.p_conditional = static_cast<double>(report.both_sat) / static_cast<double>(report.sigma_prime_sat);
  report.pass = std::abs(report.p_single - report.expected_single) <= tolerances.single &&
                std::abs(report.p_joint - report.expected_joint) <= tolerances.joint &&
                std::abs(report.p_conditional - report.expected_single) <= tolerances.conditional;
  return report;
}

ResidualReport test_residual_sat_bound(Var n, double s, unsigned alpha, std::uint64_t samples, std::uint64_t seed,
                                       ResidualDirection direction) {
  if (alpha < 1) throw InvalidParams("alpha must be at least 1");
  if (samples == 0) throw InvalidParams("residual test needs samples > 0");
  ResidualReport report;
  report.direction = direction;
  report.n = n;
  report.s = s;
  report.m_xor = clause_count(s, n);
  report.alpha = alpha;
  report.samples = samples;
  report.seed = seed;

  if (direction == ResidualDirection::SatGivenMany) {
    if (report.m_xor + alpha > n)
      throw InvalidParams("ceil(sn) + alpha = " + std::to_string(report.m_xor + alpha) + " exceeds n = " +
                          std::to_string(n));
    report.log2_count_h = static_cast<unsigned>(report.m_xor + alpha);
  } else {
    if (report.m_xor < alpha)
      throw InvalidParams("ceil(sn) - alpha is negative: #H would be below 1");
    report.log2_count_h = static_cast<unsigned>(report.m_xor - alpha);
  }

  std::vector<Literal> fixed;
  for (Var v = report.log2_count_h + 1; v <= n; ++v) fixed.push_back({v, true});

  for (std::uint64_t t = 0; t < samples; ++t) {
    const auto q = sample_xor_clauses(n, report.m_xor, derive_seed(seed, {t}));
    const bool sat = xor_system_satisfiable(n, q, fixed);
    report.events += (direction == ResidualDirection::SatGivenMany) ? sat : !sat;
  }
  report.frequency = static_cast<double>(report.events) / static_cast<double>(samples);
  report.lower_bound = stats::wilson_lower(report.events, samples, report.confidence);
  report.threshold = 1.0 - std::ldexp(1.0, -static_cast<int>(alpha)) - report.slack;
  report.pass = report.lower_bound >= report.threshold;
  return report;
}

MarkovReport test_markov_count_bound(std::uint32_t k, double r, Var n, double epsilon, std::uint64_t samples,
                                     std::uint64_t seed) {
  if (!(epsilon > 1.0)) throw InvalidParams("epsilon must exceed 1");
  if (samples == 0) throw InvalidParams("markov test needs samples > 0");
  const RandomModelParams params{k, n, r, 0.0};
  params.validate();
  MarkovReport report;
  report.k = k;
  report.r = r;
  report.n = n;
  report.epsilon = epsilon;
  report.samples = samples;
  report.seed = seed;
  report.log2_bound =
      static_cast<double>(n) * (1.0 + std::log2(epsilon) + r * std::log2(1.0 - std::ldexp(1.0, -static_cast<int>(k))));

  for (std::uint64_t t = 0; t < samples; ++t) {
    const auto f = sample_formula(params, derive_seed(seed, {t}));
    const auto counted = count_exact(f);
    const bool holds = counted.count == 0 || log2_exact(counted.count) < report.log2_bound;
    report.below_bound += holds;
  }
  report.violations = samples - report.below_bound;
  report.violation_frequency = static_cast<double>(report.violations) / static_cast<double>(samples);
  report.tail = std::pow(epsilon, -static_cast<double>(n));
  report.lower_bound = stats::wilson_lower(report.below_bound, samples, report.confidence);
  report.threshold = 1.0 - report.tail - report.slack;
  report.pass = report.lower_bound >= report.threshold;
  return report;
}

nlohmann::json report_json(const PairwiseReport& r) {
  return {
      {"test", "xor-pairwise-independence"},
      {"inputs", {{"n", r.n}, {"m_xor", r.m_xor}, {"samples", r.samples}}},
      {"seed", r.seed},
      {"sigma", r.sigma},
      {"sigma_prime", r.sigma_prime},
      {"counts", {{"sigma_sat", r.sigma_sat}, {"sigma_prime_sat", r.sigma_prime_sat}, {"both_sat", r.both_sat}}},
      {"expected", {{"single", r.expected_single}, {"joint", r.expected_joint}}},
      {"estimates", {{"p_single", r.p_single}, {"p_conditional", r.p_conditional}, {"p_joint", r.p_joint}}},
      {"tolerances",
       {{"single", r.tolerances.single}, {"joint", r.tolerances.joint}, {"conditional", r.tolerances.conditional}}},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

nlohmann::json report_json(const ResidualReport& r) {
  const bool sat_side = r.direction == ResidualDirection::SatGivenMany;
  return {
      {"test", sat_side ? "residual-sat-given-many-solutions" : "residual-unsat-given-few-solutions"},
      {"inputs", {{"n", r.n}, {"s", r.s}, {"m_xor", r.m_xor}, {"alpha", r.alpha}, {"samples", r.samples}}},
      {"seed", r.seed},
      {"log2_count_h", r.log2_count_h},
      {"counts", {{sat_side ? "sat" : "unsat", r.events}, {"samples", r.samples}}},
      {"frequency", r.frequency},
      {"interval",
       {{"method", "wilson-one-sided"}, {"confidence", r.confidence}, {"lower_bound", r.lower_bound}}},
      {"slack", r.slack},
      {"threshold", r.threshold},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

nlohmann::json report_json(const MarkovReport& r) {
  return {
      {"test", "markov-count-bound"},
      {"inputs", {{"k", r.k}, {"r", r.r}, {"n", r.n}, {"epsilon", r.epsilon}, {"samples", r.samples}}},
      {"seed", r.seed},
      {"log2_bound", r.log2_bound},
      {"counts", {{"below_bound", r.below_bound}, {"violations", r.violations}}},
      {"violation_frequency", r.violation_frequency},
      {"markov_tail", r.tail},
      {"interval",
       {{"method", "wilson-one-sided"}, {"confidence", r.confidence}, {"lower_bound", r.lower_bound}}},
      {"slack", r.slack},
      {"threshold", r.threshold},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

}  // namespace cnfxor
