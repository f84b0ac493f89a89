#include <gtest/gtest.h>

#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "cnfxor/dimacs.hpp"
#include "cnfxor/error.hpp"
#include "cnfxor/formula.hpp"
#include "cnfxor/serialization.hpp"
#include "oracles.hpp"

namespace cnfxor {
namespace {

TEST(Formula, ClauseCountsUseCeiling) {
  const RandomModelParams p{3, 10, 0.41, 0.29};
  EXPECT_EQ(p.cnf_count(), 5U);
  EXPECT_EQ(p.xor_count(), 3U);
  const auto f = sample_formula(p, 1);
  EXPECT_EQ(f.cnf.size(), 5U);
  EXPECT_EQ(f.xors.size(), 3U);
  EXPECT_EQ(clause_count(0.3, 10), 3U);
  EXPECT_EQ(clause_count(0.31, 10), 4U);
  EXPECT_EQ(clause_count(0.0, 10), 0U);
}

TEST(Formula, EmptyModelIsSatisfiedByEverything) {
  const auto f = sample_formula({3, 10, 0.0, 0.0}, 5);
  EXPECT_TRUE(f.cnf.empty());
  EXPECT_TRUE(f.xors.empty());
  oracle::for_each_assignment(10, [&](const Assignment& a) { ASSERT_TRUE(evaluate(f, a)); });
}

TEST(Formula, ParamsValidation) {
  EXPECT_THROW((RandomModelParams{3, 2, 1.0, 0.0}.validate()), InvalidParams);
  EXPECT_THROW((RandomModelParams{0, 5, 1.0, 0.0}.validate()), InvalidParams);
  EXPECT_THROW((RandomModelParams{3, 5, -1.0, 0.0}.validate()), InvalidParams);
  EXPECT_THROW((RandomModelParams{3, 0, 1.0, 0.0}.validate()), InvalidParams);
  Rng rng(1);
  EXPECT_THROW(sample_k_clause(3, 4, rng), InvalidParams);
  EXPECT_THROW(sample_k_clause(3, 0, rng), InvalidParams);
}

TEST(Formula, FullWidthClauseMentionsEveryVariable) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto c = sample_k_clause(5, 5, rng);
    ASSERT_EQ(c.literals.size(), 5U);
    for (Var v = 1; v <= 5; ++v) EXPECT_EQ(c.literals[v - 1].variable, v);
  }
}

TEST(Formula, KClauseVariableAndSignFrequencies) {
  Rng rng(3);
  constexpr int draws = 100000;
  std::array<int, 21> hits{};
  int positive = 0;
  for (int i = 0; i < draws; ++i) {
    for (auto lit : sample_k_clause(20, 3, rng).literals) {
      ++hits[lit.variable];
      positive += !lit.negated;
    }
  }
  for (Var v = 1; v <= 20; ++v) EXPECT_NEAR(hits[v] / double(draws), 3.0 / 20.0, 0.01);
  EXPECT_NEAR(positive / (3.0 * draws), 0.5, 0.01);
}

TEST(Formula, KClauseSignPatternsUniform) {
  Rng rng(4);
  constexpr int draws = 80000;
  std::array<int, 8> patterns{};
  for (int i = 0; i < draws; ++i) {
    const auto c = sample_k_clause(3, 3, rng);
    int code = 0;
    for (auto lit : c.literals) code = code * 2 + lit.negated;
    ++patterns[code];
  }
  for (int p : patterns) EXPECT_NEAR(p / double(draws), 0.125, 0.01);
}

TEST(Formula, KClauseSubsetsPassChiSquare) {
  Rng rng(5);
  constexpr int draws = 100000;
  std::map<std::array<Var, 3>, int> counts;
  for (int i = 0; i < draws; ++i) {
    const auto c = sample_k_clause(20, 3, rng);
    ++counts[{c.literals[0].variable, c.literals[1].variable, c.literals[2].variable}];
  }
  constexpr int cells = 20 * 19 * 18 / 6;
  const double expected = double(draws) / cells;
  double chi2 = (cells - static_cast<double>(counts.size())) * expected;
  for (const auto& [subset, observed] : counts) chi2 += (observed - expected) * (observed - expected) / expected;
  const boost::math::chi_squared dist(cells - 1);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(Formula, XorClauseMeanWidth) {
  Rng rng(6);
  double total = 0;
  for (int i = 0; i < 20000; ++i) total += static_cast<double>(sample_xor_clause(100, rng).vars.size());
  EXPECT_NEAR(total / 20000, 50.0, 1.0);
}

TEST(Formula, XorClauseUniformOverSingleVariable) {
  Rng rng(7);
  constexpr int draws = 40000;
  std::array<int, 4> counts{};
  for (int i = 0; i < draws; ++i) {
    const auto x = sample_xor_clause(1, rng);
    ++counts[x.vars.size() * 2 + x.rhs];
  }
  for (int c : counts) EXPECT_NEAR(c / double(draws), 0.25, 0.01);
  EXPECT_GT(counts[1], 0);  // the empty clause with rhs 1 is kept
}

TEST(Formula, XorClauseVarsSortedAndDistinct) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_xor_clause(150, rng);
    for (std::size_t j = 1; j < x.vars.size(); ++j) EXPECT_LT(x.vars[j - 1], x.vars[j]);
    if (!x.vars.empty()) EXPECT_LE(x.vars.back(), 150U);
  }
}

TEST(Formula, SamplingIsDeterministic) {
  const RandomModelParams p{3, 40, 2.0, 0.5};
  const auto a = sample_formula(p, 99);
  const auto b = sample_formula(p, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_dimacs_xor(a), to_dimacs_xor(b));
  EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
  EXPECT_NE(a, sample_formula(p, 100));
}

TEST(Formula, HigherDensityExtendsLowerDensity) {
  const auto low = sample_formula({3, 30, 1.0, 0.3}, 17);
  const auto high = sample_formula({3, 30, 2.0, 0.6}, 17);
  ASSERT_GE(high.cnf.size(), low.cnf.size());
  ASSERT_GE(high.xors.size(), low.xors.size());
  EXPECT_TRUE(std::equal(low.cnf.begin(), low.cnf.end(), high.cnf.begin()));
  EXPECT_TRUE(std::equal(low.xors.begin(), low.xors.end(), high.xors.begin()));
}

TEST(Formula, EvaluateExamples) {
  Assignment a(2);
  a.set(2, true);
  const KClause clause{{{1, false}, {2, true}}};
  EXPECT_FALSE(evaluate(clause, a));

  Assignment b(2);
  b.set(1, true);
  EXPECT_TRUE(evaluate(XorClause{{1, 2}, true}, b));

  Formula empty;
  empty.n = 3;
  EXPECT_TRUE(evaluate(empty, Assignment(3)));
  EXPECT_THROW(evaluate(empty, Assignment(4)), LengthMismatch);
}

TEST(Formula, EvaluateIsCompositional) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = sample_formula({3, 8, 1.5, 0.4}, seed);
    oracle::for_each_assignment(8, [&](const Assignment& a) {
      bool all = true;
      for (const auto& c : f.cnf) all = all && evaluate(c, a);
      for (const auto& x : f.xors) all = all && evaluate(x, a);
      ASSERT_EQ(evaluate(f, a), all);
    });
  }
}

TEST(Formula, JsonShape) {
  Formula f;
  f.n = 3;
  f.k = 3;
  f.cnf.push_back({{{1, false}, {2, true}, {3, false}}});
  f.xors.push_back({{1, 3}, true});
  const nlohmann::json j = f;
  EXPECT_EQ(j.dump(), R"({"cnf":[[1,-2,3]],"k":3,"n":3,"xor":[{"rhs":1,"vars":[1,3]}]})");
  EXPECT_EQ(j.get<Formula>(), f);
}

}  // namespace
}  // namespace cnfxor
