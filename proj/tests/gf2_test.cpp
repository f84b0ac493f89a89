#include <gtest/gtest.h>

#include <set>

#include "cnfxor/gf2.hpp"
#include "cnfxor/rng.hpp"
#include "oracles.hpp"

namespace cnfxor {
namespace {

using gf2::Row;
using gf2::System;

System random_system(std::size_t n, std::size_t rows, Rng& rng) {
  System system(n);
  for (std::size_t i = 0; i < rows; ++i) {
    Row row{BitVector(n), rng.coin()};
    for (std::size_t c = 0; c < n; ++c)
      if (rng.coin()) row.bits.set(c);
    system.add_row(std::move(row));
  }
  return system;
}

std::vector<std::vector<int>> as_matrix(const System& system) {
  const auto n = system.variable_count();
  std::vector<std::vector<int>> m;
  for (const auto& row : system.rows()) {
    std::vector<int> line(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c) line[c] = row.bits.test(c);
    line[n] = row.rhs;
    m.push_back(std::move(line));
  }
  return m;
}

bool satisfies(const System& system, std::uint64_t bits) {
  for (const auto& row : system.rows()) {
    bool parity = false;
    for (std::size_t c = 0; c < system.variable_count(); ++c)
      if (row.bits.test(c)) parity ^= ((bits >> c) & 1U) != 0;
    if (parity != row.rhs) return false;
  }
  return true;
}

std::uint64_t to_word(const BitVector& v) { return v.words().empty() ? 0 : v.words()[0]; }

TEST(Gf2, ForcedBackSubstitution) {
  System system(2);
  const std::size_t both[] = {0, 1};
  const std::size_t second[] = {1};
  system.add_equation(both, true);
  system.add_equation(second, false);
  const auto reduced = gf2::row_reduce(system);
  EXPECT_EQ(reduced.rank(), 2U);
  EXPECT_TRUE(reduced.consistent);
  const auto x = reduced.particular_solution();
  EXPECT_TRUE(x.test(0));
  EXPECT_FALSE(x.test(1));
}

TEST(Gf2, ContradictoryRowsAreInconsistent) {
  System system(1);
  const std::size_t first[] = {0};
  system.add_equation(first, true);
  system.add_equation(first, false);
  EXPECT_FALSE(gf2::row_reduce(system).consistent);
  EXPECT_EQ(gf2::solution_count(system), 0);
}

TEST(Gf2, EmptySystem) {
  System system(3);
  const auto reduced = gf2::row_reduce(system);
  EXPECT_EQ(reduced.rank(), 0U);
  EXPECT_TRUE(reduced.consistent);
  EXPECT_EQ(gf2::solution_count(system), 8);
}

TEST(Gf2, OneFreeVariable) {
  System system(2);
  const std::size_t both[] = {0, 1};
  system.add_equation(both, true);
  EXPECT_EQ(gf2::solution_count(system), 2);
}

TEST(Gf2, RowWidthMustMatch) {
  System system(3);
  EXPECT_THROW(system.add_row(Row{BitVector(4), false}), LengthMismatch);
}

TEST(Gf2, DuplicateColumnsCancel) {
  System system(2);
  const std::size_t twice[] = {0, 0};
  system.add_equation(twice, true);
  EXPECT_FALSE(gf2::row_reduce(system).consistent);
}

TEST(Gf2, RankMatchesTextbookElimination) {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto system = random_system(20, 50, rng);
    const auto reduced = gf2::row_reduce(system);
    const auto [rank, consistent] = oracle::textbook_rank(as_matrix(system), 20);
    EXPECT_EQ(reduced.rank(), rank);
    EXPECT_EQ(reduced.consistent, consistent);
  }
}

TEST(Gf2, ReducedRowEchelonShape) {
  Rng rng(8);
  const auto reduced = gf2::row_reduce(random_system(30, 20, rng));
  for (std::size_t i = 0; i < reduced.rank(); ++i) {
    if (i > 0) EXPECT_LT(reduced.pivots[i - 1], reduced.pivots[i]);
    for (std::size_t j = 0; j < reduced.rank(); ++j)
      EXPECT_EQ(reduced.rows[j].bits.test(reduced.pivots[i]), i == j);
  }
}

TEST(Gf2, CountMatchesExhaustiveEnumeration) {
  Rng rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(12);
    const auto system = random_system(n, rng.below(n + 3), rng);
    std::uint64_t brute = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) brute += satisfies(system, bits);
    EXPECT_EQ(gf2::solution_count(system), brute);
  }
}

TEST(Gf2, CountIsZeroOrPowerOfTwo) {
  Rng rng(10);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(100);
    const auto system = random_system(n, rng.below(n + 5), rng);
    const auto count = gf2::solution_count(system);
    if (count == 0) continue;
    const auto d = boost::multiprecision::msb(count);
    EXPECT_EQ(count, BigCount(1) << d);
    EXPECT_LE(d, n);
  }
}

TEST(Gf2, ReductionIsIdempotent) {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto once = gf2::row_reduce(random_system(40, 30, rng));
    const auto twice = gf2::row_reduce(once.n, once.rows);
    EXPECT_EQ(once.rows, twice.rows);
    EXPECT_EQ(once.pivots, twice.pivots);
    EXPECT_EQ(once.consistent, twice.consistent);
  }
}

TEST(Gf2, AppendingRowNeverIncreasesCount) {
  Rng rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    auto system = random_system(16, rng.below(16), rng);
    const auto before = gf2::solution_count(system);
    Row extra{BitVector(16), rng.coin()};
    for (std::size_t c = 0; c < 16; ++c)
      if (rng.coin()) extra.bits.set(c);
    system.add_row(std::move(extra));
    EXPECT_LE(gf2::solution_count(system), before);
  }
}

TEST(Gf2, ReduceCachesRank) {
  Rng rng(13);
  auto system = random_system(10, 4, rng);
  EXPECT_FALSE(system.rank().has_value());
  const auto rank = system.reduce().rank();
  ASSERT_TRUE(system.rank().has_value());
  EXPECT_EQ(*system.rank(), rank);
}

TEST(Gf2, EnumerateSingleUnit) {
  System system(2);
  const std::size_t first[] = {0};
  system.add_equation(first, true);
  std::set<std::uint64_t> seen;
  gf2::enumerate_solutions(gf2::row_reduce(system), [&](const BitVector& x) { seen.insert(to_word(x)); });
  EXPECT_EQ(seen, (std::set<std::uint64_t>{0b01, 0b11}));
}

TEST(Gf2, EnumerateInconsistentThrows) {
  System system(1);
  const std::size_t first[] = {0};
  system.add_equation(first, true);
  system.add_equation(first, false);
  EXPECT_THROW(gf2::enumerate_solutions(gf2::row_reduce(system), [](const BitVector&) {}), InvalidParams);
}

TEST(Gf2, EnumerateGuardsDimension) {
  System system(31);
  EXPECT_THROW(gf2::enumerate_solutions(gf2::row_reduce(system), [](const BitVector&) {}), GuardExceeded);
}

TEST(Gf2, EnumerationEqualsExhaustiveFilter) {
  Rng rng(14);
  for (int rep = 0; rep < 30; ++rep) {
    auto system = random_system(10, rng.below(8), rng);
    const auto reduced = gf2::row_reduce(system);
    std::set<std::uint64_t> expected;
    for (std::uint64_t bits = 0; bits < 1024; ++bits)
      if (satisfies(system, bits)) expected.insert(bits);
    if (!reduced.consistent) {
      EXPECT_TRUE(expected.empty());
      continue;
    }
    std::set<std::uint64_t> seen;
    std::size_t visits = 0;
    gf2::enumerate_solutions(reduced, [&](const BitVector& x) {
      seen.insert(to_word(x));
      ++visits;
    });
    EXPECT_EQ(seen, expected);
    EXPECT_EQ(visits, expected.size());
  }
}

TEST(Gf2, WideRowsAcrossWords) {
  System system(130);
  const std::size_t cols[] = {0, 64, 129};
  const std::size_t tail[] = {129};
  system.add_equation(cols, true);
  system.add_equation(tail, true);
  const auto reduced = gf2::row_reduce(system);
  EXPECT_EQ(reduced.rank(), 2U);
  EXPECT_EQ(gf2::solution_count(reduced), BigCount(1) << 128);
}

}  // namespace
}  // namespace cnfxor
