#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cnfxor/formula.hpp"
#include "cnfxor/solver.hpp"
#include "cnfxor/statistics.hpp"

namespace cnfxor::lab {

/// Cells whose exhausted fraction exceeds this are flagged and carry no
/// probability estimate.
inline constexpr double kDefaultExhaustedCap = 0.05;

struct GridSpec {
  std::uint32_t k = 3;
  Var n = 0;
  std::vector<double> r_values;
  std::vector<double> s_values;
  std::uint64_t trials_per_cell = 1;
  SolveBudget budget;
  std::uint64_t master_seed = 0;
  SolverOptions solver;
  double exhausted_cap = kDefaultExhaustedCap;

  void validate() const;
};

struct Tally {
  std::uint64_t sat = 0;
  std::uint64_t unsat = 0;
  std::uint64_t exhausted = 0;

  std::uint64_t total() const noexcept { return sat + unsat + exhausted; }
  bool flagged(double exhausted_cap) const noexcept;
  /// sat / (sat + unsat); empty when flagged or nothing was decided.
  std::optional<double> p_sat(double exhausted_cap) const noexcept;
  void add(Verdict verdict) noexcept;
};

struct CellResult {
  std::size_t r_index = 0;
  std::size_t s_index = 0;
  double r = 0.0;
  double s = 0.0;
  Tally tally;
};

struct ScanResult {
  GridSpec spec;
  std::vector<CellResult> cells;  // r-major, then s
};

/// Seed of trial t in cell (i, j); depends on nothing else.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t r_index, std::size_t s_index, std::uint64_t trial);

/// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Deterministic for conflict-limited budgets, whatever the worker count.
ScanResult scan(const GridSpec& spec, unsigned workers = 0);

/// Header "k,n,r,s,trials,sat,unsat,exhausted,p_sat"; p_sat is empty for
/// flagged cells.
void write_scan_csv(const ScanResult& result, std::ostream& out);

enum class Axis { R, S };

char axis_name(Axis axis) noexcept;

struct CrossingSpec {
  std::uint32_t k = 3;
  Var n = 0;
  Axis fixed_axis = Axis::S;  // the density held constant; the other one is searched
  double fixed_value = 0.0;
  double search_low = 0.0;
  double search_high = 1.0;
  std::uint64_t trials_per_probe = 50;
  double target = 0.5;
  std::uint64_t seed = 0;
  double resolution = 0.01;
  double confidence = 0.95;
  SolveBudget budget;
  SolverOptions solver;
  double exhausted_cap = kDefaultExhaustedCap;

  void validate() const;
};

struct Probe {
  double density = 0.0;
  Tally tally;
  stats::Interval interval;  // Wilson interval of P(sat) over decided trials
};

struct CrossingEstimate {
  std::uint32_t k = 0;
  Var n = 0;
  Axis fixed_axis = Axis::S;
  double fixed_value = 0.0;
  double crossing = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials_used = 0;
  std::uint64_t exhausted = 0;
  bool stopped_on_flagged_probe = false;
  std::vector<Probe> probes;  // in evaluation order

  double exhausted_fraction() const noexcept;
};

/// Bisection on the searched density. Trial t of every probe uses seed
/// derive_seed(seed, {t}); since clause i comes from its own stream, the
/// formula at a higher density contains the one at a lower density and the
/// estimated P(sat) is monotone along the search. Bisection continues until
/// the bracket is narrower than `resolution` or a probe is flagged. The
/// interval runs from the densest probe whose Wilson interval lies wholly
/// above the target to the sparsest one wholly below it (search bounds when
/// there is none). Throws NotBracketed unless P(sat) is above the target at
/// search_low and below it at search_high.
CrossingEstimate estimate_crossing(const CrossingSpec& spec, unsigned workers = 0);

/// Header "k,n,axis,fixed_value,crossing,ci_low,ci_high,trials_used".
void write_crossings_csv(std::span<const CrossingEstimate> estimates, std::ostream& out);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct SlopeFit {
  std::uint32_t k = 0;
  Var n = 0;
  std::vector<std::pair<double, double>> crossings;  // (r, s*)
  LineFit free_intercept;
  LineFit unit_intercept;  // s = 1 + slope * r
};

/// Least-squares lines through (r, s*). Throws InsufficientData for fewer
/// than three distinct r values.
SlopeFit fit_slope(std::uint32_t k, Var n, std::span<const std::pair<double, double>> crossings);

nlohmann::json spec_json(const GridSpec& spec);
nlohmann::json spec_json(const CrossingSpec& spec);
nlohmann::json estimate_json(const CrossingEstimate& estimate);
nlohmann::json fit_json(const SlopeFit& fit);

}  // namespace cnfxor::lab
