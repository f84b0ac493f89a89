#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "cnfxor/bitvector.hpp"
#include "cnfxor/rng.hpp"

namespace cnfxor {

using Var = std::uint32_t;  // variables are numbered 1..n

struct Literal {
  Var variable = 0;
  bool negated = false;

  /// Signed DIMACS code: +v or -v.
  int dimacs() const noexcept { return negated ? -static_cast<int>(variable) : static_cast<int>(variable); }
  static Literal from_dimacs(int code) noexcept {
    return {static_cast<Var>(code < 0 ? -code : code), code < 0};
  }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Disjunction of literals over distinct variables.
struct KClause {
  std::vector<Literal> literals;

  friend bool operator==(const KClause&, const KClause&) = default;
};

/// XOR of `vars` equals `rhs`. `vars` is sorted and duplicate-free; an
/// empty clause is a tautology (rhs 0) or a contradiction (rhs 1).
struct XorClause {
  std::vector<Var> vars;
  bool rhs = false;

  friend bool operator==(const XorClause&, const XorClause&) = default;
};

struct Formula {
  Var n = 0;
  std::uint32_t k = 0;
  std::vector<KClause> cnf;
  std::vector<XorClause> xors;

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Truth values for variables 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var n) : values_(n) {}
  explicit Assignment(BitVector values) : values_(std::move(values)) {}

  Var size() const noexcept { return static_cast<Var>(values_.size()); }
  bool value(Var v) const noexcept { return values_.test(v - 1); }
  void set(Var v, bool value) noexcept { values_.assign(v - 1, value); }
  bool satisfies(Literal lit) const noexcept { return value(lit.variable) != lit.negated; }
  const BitVector& bits() const noexcept { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  BitVector values_;
};

struct RandomModelParams {
  std::uint32_t k = 3;
  Var n = 0;
  double r = 0.0;  // k-clause density
  double s = 0.0;  // XOR-clause density

  std::uint64_t cnf_count() const;
  std::uint64_t xor_count() const;
  /// Throws InvalidParams on k < 1, n < 1, k > n, or negative densities.
  void validate() const;
};

/// ceil(density * n), treating products within 1e-9 of an integer as that
/// integer so 0.3 * 10 yields 3 rather than 4.
std::uint64_t clause_count(double density, Var n);

KClause sample_k_clause(Var n, std::uint32_t k, Rng& rng);
XorClause sample_xor_clause(Var n, Rng& rng);

/// Samples ceil(rn) k-clauses and ceil(sn) XOR clauses. Clause i of each kind
/// draws from its own stream derived from (seed, kind, i), so the formula at a
/// higher density extends the one at a lower density with the same seed.
Formula sample_formula(const RandomModelParams& params, std::uint64_t seed);

/// Throws LengthMismatch when the assignment width differs from n.
bool evaluate(const Formula& formula, const Assignment& assignment);
bool evaluate(const KClause& clause, const Assignment& assignment);
bool evaluate(const XorClause& clause, const Assignment& assignment);

}  // namespace cnfxor
