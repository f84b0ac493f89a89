#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cnfxor/bitvector.hpp"
#include "cnfxor/error.hpp"

namespace cnfxor {

/// Exact non-negative count; model counts reach 2^n with n in the hundreds.
using BigCount = boost::multiprecision::cpp_int;

namespace gf2 {

/// One linear equation over GF(2): XOR of the selected columns equals rhs.
/// Column j stands for variable j + 1.
struct Row {
  BitVector bits;
  bool rhs = false;

  friend bool operator==(const Row&, const Row&) = default;
};

/// Result of Gauss-Jordan elimination. Rows are in reduced row-echelon form,
/// ordered by pivot column; zero rows with rhs 0 are dropped and at most one
/// 0 = 1 row is kept (last) when the system is inconsistent.
struct ReducedSystem {
  std::size_t n = 0;
  std::vector<Row> rows;
  std::vector<std::size_t> pivots;  // pivots[i] is the pivot column of rows[i]
  bool consistent = true;

  std::size_t rank() const noexcept { return pivots.size(); }
  std::size_t free_dimension() const noexcept { return n - rank(); }
  /// Pivot solution: free columns 0, pivots read from rhs. Requires consistency.
  BitVector particular_solution() const;
};

class System {
 public:
  explicit System(std::size_t n) : n_(n) {}

  std::size_t variable_count() const noexcept { return n_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  /// Present only after reduce() and until the next add.
  std::optional<std::size_t> rank() const noexcept { return rank_; }

  /// Throws LengthMismatch when the row width differs from n.
  void add_row(Row row);
  /// Adds XOR(columns) = rhs; repeated columns cancel.
  void add_equation(std::span<const std::size_t> columns, bool rhs);

  /// Replaces the rows by their reduced form and caches the rank.
  const ReducedSystem& reduce();

 private:
  std::size_t n_;
  std::vector<Row> rows_;
  std::optional<std::size_t> rank_;
  ReducedSystem reduced_;
};

ReducedSystem row_reduce(const System& system);
ReducedSystem row_reduce(std::size_t n, std::span<const Row> rows);

/// 0 when inconsistent, else exactly 2^(n - rank).
BigCount solution_count(const System& system);
BigCount solution_count(const ReducedSystem& reduced);

inline constexpr std::size_t kMaxEnumerationDimension = 30;

/// Visits every solution of a consistent reduced system exactly once, in
/// Gray-code order over the free columns. The visitor receives a BitVector
/// of width n that is only valid during the call.
template <class Visitor>
void enumerate_solutions(const ReducedSystem& reduced, Visitor&& visit) {
  if (!reduced.consistent)
    throw InvalidParams("enumerate_solutions: system is inconsistent");
  const std::size_t dim = reduced.free_dimension();
  if (dim > kMaxEnumerationDimension)
    throw GuardExceeded("enumerate_solutions: free dimension " + std::to_string(dim) +
                        " exceeds " + std::to_string(kMaxEnumerationDimension));

  // Flipping free column f toggles f and every pivot whose row mentions f.
  std::vector<BitVector> toggles;
  toggles.reserve(dim);
  BitVector is_pivot(reduced.n);
  for (auto p : reduced.pivots) is_pivot.set(p);
  for (std::size_t col = 0; col < reduced.n; ++col) {
    if (is_pivot.test(col)) continue;
    BitVector mask(reduced.n);
    mask.set(col);
    for (std::size_t i = 0; i < reduced.pivots.size(); ++i)
      if (reduced.rows[i].bits.test(col)) mask.set(reduced.pivots[i]);
    toggles.push_back(std::move(mask));
  }

  BitVector current = reduced.particular_solution();
  visit(static_cast<const BitVector&>(current));
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t step = 1; step < total; ++step) {
    current ^= toggles[static_cast<std::size_t>(std::countr_zero(step))];
    visit(static_cast<const BitVector&>(current));
  }
}

}  // namespace gf2
}  // namespace cnfxor
