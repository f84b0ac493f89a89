#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "cnfxor/formula.hpp"

namespace cnfxor {

/// DIMACS with XOR lines:
///
///   p cnf <n> <clauses + xors>
///   1 -2 3 0        k-clause
///   x1 3 0          x1 XOR x3 = 1
///   x-2 0           x2 = 0 (a negated leading literal flips the parity)
///   x 0             empty XOR with rhs 1
///
/// An empty XOR with rhs 0 has no literal to negate and is written as
/// "x-1 1 0", which the parser folds back to the empty clause.
void write_dimacs_xor(const Formula& formula, std::ostream& out);
std::string to_dimacs_xor(const Formula& formula);

/// Throws ParseError carrying the 1-based line number. The formula's k is the
/// widest k-clause (0 without k-clauses).
Formula parse_dimacs_xor(std::istream& in);
Formula parse_dimacs_xor(std::string_view text);

}  // namespace cnfxor
