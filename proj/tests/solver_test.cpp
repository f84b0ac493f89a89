#include <gtest/gtest.h>

#include "cnfxor/counter.hpp"
#include "cnfxor/gf2.hpp"
#include "cnfxor/solver.hpp"
#include "oracles.hpp"

namespace cnfxor {
namespace {

RandomModelParams random_params(Rng& rng, Var max_n) {
  const auto k = static_cast<std::uint32_t>(2 + rng.below(3));
  const Var n = static_cast<Var>(k + rng.below(max_n - k + 1));
  const double r = 3.0 * static_cast<double>(rng.below(1001)) / 1000.0;
  const double s = 1.2 * static_cast<double>(rng.below(1001)) / 1000.0;
  return {k, n, r, s};
}

TEST(Solver, ContradictoryUnitAndXor) {
  Formula f;
  f.n = 1;
  f.cnf.push_back({{{1, true}}});
  f.xors.push_back({{1}, true});
  EXPECT_EQ(solve(f).verdict, Verdict::Unsat);
}

TEST(Solver, EmptyFormulaIsSat) {
  Formula f;
  f.n = 4;
  const auto out = solve(f);
  ASSERT_EQ(out.verdict, Verdict::Sat);
  ASSERT_TRUE(out.model.has_value());
  EXPECT_TRUE(evaluate(f, *out.model));
}

TEST(Solver, EmptyOddXorIsUnsat) {
  Formula f;
  f.n = 3;
  f.xors.push_back({{}, true});
  EXPECT_EQ(solve(f).verdict, Verdict::Unsat);
}

TEST(Solver, EmptyCnfClauseIsUnsat) {
  Formula f;
  f.n = 2;
  f.cnf.push_back({});
  EXPECT_EQ(solve(f).verdict, Verdict::Unsat);
}

TEST(Solver, CheckModelRejectsFlippedUnit) {
  Formula f;
  f.n = 3;
  f.cnf.push_back({{{2, false}}});
  f.cnf.push_back({{{1, false}, {3, true}}});
  const auto out = solve(f);
  ASSERT_EQ(out.verdict, Verdict::Sat);
  EXPECT_TRUE(check_model(f, *out.model));
  auto flipped = *out.model;
  flipped.set(2, !flipped.value(2));
  EXPECT_FALSE(check_model(f, flipped));
}

TEST(Solver, CheckModelAgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = oracle::random_mixed_formula(8, 6, 2, seed);
    oracle::for_each_assignment(8, [&](const Assignment& a) {
      bool ok = true;
      for (const auto& c : f.cnf) {
        bool any = false;
        for (auto lit : c.literals) any = any || a.satisfies(lit);
        ok = ok && any;
      }
      for (const auto& x : f.xors) {
        bool parity = false;
        for (auto v : x.vars) parity ^= a.value(v);
        ok = ok && parity == x.rhs;
      }
      ASSERT_EQ(check_model(f, a), ok);
    });
  }
}

void expect_agreement(SearchMode mode, std::uint64_t first_seed) {
  Rng rng(first_seed);
  for (int i = 0; i < 500; ++i) {
    const auto params = random_params(rng, 14);
    const auto f = sample_formula(params, rng.next());
    const auto out = solve(f, SolveBudget::unlimited(), {mode});
    const bool sat = count_exact(f).count > 0;
    ASSERT_NE(out.verdict, Verdict::Exhausted);
    ASSERT_EQ(out.verdict == Verdict::Sat, sat) << "k=" << params.k << " n=" << params.n << " r=" << params.r
                                                 << " s=" << params.s;
    if (sat) ASSERT_TRUE(evaluate(f, *out.model));
  }
}

TEST(Solver, AgreesWithExactCounter) { expect_agreement(SearchMode::Dpll, 1); }

TEST(Solver, LearningModeAgreesWithExactCounter) { expect_agreement(SearchMode::Cdcl, 2); }

TEST(Solver, AgreesWithBruteForceOnShortClauses) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const Var n = static_cast<Var>(2 + rng.below(11));
    const auto f = oracle::random_mixed_formula(n, rng.below(4 * n), rng.below(n / 2 + 2), seed);
    const bool sat = oracle::brute_force_count(f) > 0;
    for (auto mode : {SearchMode::Dpll, SearchMode::Cdcl}) {
      const auto out = solve(f, {}, {mode});
      ASSERT_EQ(out.verdict == Verdict::Sat, sat) << "seed " << seed;
    }
  }
}

TEST(Solver, AddingClauseNeverRestoresSat) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto params = random_params(rng, 14);
    auto f = sample_formula(params, rng.next());
    const auto before = solve(f).verdict;
    Rng extra(rng.next());
    if (rng.coin())
      f.cnf.push_back(sample_k_clause(f.n, params.k, extra));
    else
      f.xors.push_back(sample_xor_clause(f.n, extra));
    const auto after = solve(f).verdict;
    if (before == Verdict::Unsat) EXPECT_EQ(after, Verdict::Unsat);
  }
}

TEST(Solver, XorOnlyNeedsNoDecisions) {
  for (Var n : {10U, 100U, 250U, 500U}) {
    for (double s : {0.5, 0.9, 1.0, 1.1}) {
      const auto f = sample_formula({3, n, 0.0, s}, n * 7 + static_cast<std::uint64_t>(s * 10));
      const auto out = solve(f);
      EXPECT_EQ(out.stats.decisions, 0U) << "n=" << n << " s=" << s;
      EXPECT_NE(out.verdict, Verdict::Exhausted);
    }
  }
}

TEST(Solver, XorOnlyVerdictMatchesElimination) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = sample_formula({3, 60, 0.0, 1.0}, seed);
    gf2::System system(f.n);
    for (const auto& x : f.xors) {
      std::vector<std::size_t> cols;
      for (auto v : x.vars) cols.push_back(v - 1);
      system.add_equation(cols, x.rhs);
    }
    EXPECT_EQ(solve(f).verdict == Verdict::Sat, gf2::row_reduce(system).consistent);
  }
}

TEST(Solver, DeterministicStats) {
  const auto f = sample_formula({3, 60, 4.26, 0.0}, 11);
  const auto a = solve(f, SolveBudget::conflicts(100000));
  const auto b = solve(f, SolveBudget::conflicts(100000));
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.stats.decisions, b.stats.decisions);
  EXPECT_EQ(a.stats.propagations, b.stats.propagations);
  EXPECT_EQ(a.stats.conflicts, b.stats.conflicts);
  if (a.model) EXPECT_EQ(*a.model, *b.model);
}

TEST(Solver, ConflictBudgetExhausts) {
  // Hard enough at this size that a single conflict cannot settle it.
  const auto f = sample_formula({3, 80, 4.3, 0.0}, 4);
  const auto out = solve(f, SolveBudget::conflicts(1));
  EXPECT_EQ(out.verdict, Verdict::Exhausted);
  EXPECT_FALSE(out.model.has_value());
  EXPECT_LE(out.stats.conflicts, 2U);
}

TEST(Solver, WallTimeoutExhausts) {
  const auto f = sample_formula({3, 200, 4.26, 0.0}, 4);
  SolveBudget budget;
  budget.wall_timeout = std::chrono::milliseconds(1);
  EXPECT_EQ(solve(f, budget).verdict, Verdict::Exhausted);
}

TEST(Solver, VerdictNames) {
  EXPECT_EQ(to_string(Verdict::Sat), "SAT");
  EXPECT_EQ(to_string(Verdict::Unsat), "UNSAT");
  EXPECT_EQ(to_string(Verdict::Exhausted), "EXHAUSTED");
}

}  // namespace
}  // namespace cnfxor
