#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cnfxor/formula.hpp"

namespace cnfxor {

/// Search limits. A default-constructed budget is explicitly unlimited.
struct SolveBudget {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::chrono::milliseconds> wall_timeout;

  static SolveBudget unlimited() { return {}; }
  static SolveBudget conflicts(std::uint64_t limit) { return {limit, std::nullopt}; }
  bool is_unlimited() const noexcept { return !max_conflicts && !wall_timeout; }
};

enum class Verdict { Sat, Unsat, Exhausted };

std::string_view to_string(Verdict verdict) noexcept;

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct SolveOutcome {
  Verdict verdict = Verdict::Exhausted;
  std::optional<Assignment> model;  // set iff verdict == Sat
  SolveStats stats;
};

enum class SearchMode {
  Dpll,  // chronological backtracking, no learning
  Cdcl,  // first-UIP clause learning with non-chronological backjumping
};

struct SolverOptions {
  SearchMode mode = SearchMode::Dpll;
};

/// Decides a formula. Branches on the lowest-index unassigned variable that
/// occurs in a k-clause, true first; XOR clauses are kept in reduced
/// row-echelon form over the unassigned variables so every XOR consequence
/// of the current partial assignment is propagated. Once all k-clause
/// variables are assigned the remaining XOR solution space is read off
/// directly, so XOR-only formulas need no decisions. Sat models are checked
/// with evaluate() before they are returned. Deterministic unless a wall
/// timeout is set.
SolveOutcome solve(const Formula& formula, const SolveBudget& budget = {},
                   const SolverOptions& options = {});

bool check_model(const Formula& formula, const Assignment& assignment);

/// Cross-validation hook: writes the formula as DIMACS-XOR to a temporary
/// file, runs `solver` on it and reads the "s SATISFIABLE" /
/// "s UNSATISFIABLE" status line. Anything else yields Exhausted.
Verdict solve_external(const Formula& formula, const std::filesystem::path& solver);

}  // namespace cnfxor
