#include "cnfxor/gf2.hpp"

#include <utility>

namespace cnfxor::gf2 {

BitVector ReducedSystem::particular_solution() const {
  if (!consistent) throw InvalidParams("particular_solution: system is inconsistent");
  BitVector solution(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) solution.assign(pivots[i], rows[i].rhs);
  return solution;
}

void System::add_row(Row row) {
  if (row.bits.size() != n_)
    throw LengthMismatch("row width " + std::to_string(row.bits.size()) +
                         " differs from system width " + std::to_string(n_));
  rows_.push_back(std::move(row));
  rank_.reset();
}

void System::add_equation(std::span<const std::size_t> columns, bool rhs) {
  Row row{BitVector(n_), rhs};
  for (auto c : columns) {
    if (c >= n_) throw InvalidParams("column " + std::to_string(c) + " out of range");
    row.bits.flip(c);
  }
  add_row(std::move(row));
}

const ReducedSystem& System::reduce() {
  reduced_ = row_reduce(n_, rows_);
  rows_ = reduced_.rows;
  rank_ = reduced_.rank();
  return reduced_;
}

ReducedSystem row_reduce(const System& system) {
  return row_reduce(system.variable_count(), system.rows());
}

ReducedSystem row_reduce(std::size_t n, std::span<const Row> input) {
  std::vector<Row> rows(input.begin(), input.end());
  for (const auto& row : rows)
    if (row.bits.size() != n) throw LengthMismatch("row width differs from system width");

  ReducedSystem out;
  out.n = n;
  std::size_t next = 0;  // rows[0, next) are pivot rows
  for (std::size_t col = 0; col < n && next < rows.size(); ++col) {
    std::size_t found = rows.size();
    for (std::size_t i = next; i < rows.size(); ++i) {
      if (rows[i].bits.test(col)) {
        found = i;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != next && rows[i].bits.test(col)) {
        rows[i].bits ^= rows[next].bits;
        rows[i].rhs ^= rows[next].rhs;
      }
    }
    out.pivots.push_back(col);
    ++next;
  }

  out.rows.assign(std::make_move_iterator(rows.begin()),
                  std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(next)));
  for (std::size_t i = next; i < rows.size(); ++i) {
    if (rows[i].rhs) {
      out.consistent = false;
      out.rows.push_back(std::move(rows[i]));
      break;
    }
  }
  return out;
}

BigCount solution_count(const System& system) { return solution_count(row_reduce(system)); }

BigCount solution_count(const ReducedSystem& reduced) {
  if (!reduced.consistent) return 0;
  BigCount count = 1;
  count <<= reduced.free_dimension();
  return count;
}

}  // namespace cnfxor::gf2
