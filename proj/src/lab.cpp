#include "cnfxor/lab.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "cnfxor/error.hpp"
#include "cnfxor/format.hpp"
#include "cnfxor/rng.hpp"

namespace cnfxor::lab {

namespace {

void require_density(double d, const char* what) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidParams(std::string(what) + " must be finite and non-negative");
}

nlohmann::json budget_json(const SolveBudget& b) {
  nlohmann::json j = nlohmann::json::object();
  j["max_conflicts"] = b.max_conflicts ? nlohmann::json(*b.max_conflicts) : nlohmann::json(nullptr);
  j["wall_timeout_ms"] = b.wall_timeout ? nlohmann::json(b.wall_timeout->count()) : nlohmann::json(nullptr);
  return j;
}

const char* mode_name(SearchMode mode) { return mode == SearchMode::Cdcl ? "cdcl" : "dpll"; }

}  // namespace

void GridSpec::validate() const {
  RandomModelParams{k, n, 0.0, 0.0}.validate();
  if (trials_per_cell < 1) throw InvalidParams("trials per cell must be at least 1");
  if (r_values.empty() || s_values.empty()) throw InvalidParams("grid axes must be non-empty");
  for (double r : r_values) require_density(r, "r");
  for (double s : s_values) require_density(s, "s");
  if (!std::is_sorted(r_values.begin(), r_values.end()) || !std::is_sorted(s_values.begin(), s_values.end()))
    throw InvalidParams("grid axes must be sorted");
}

bool Tally::flagged(double exhausted_cap) const noexcept {
  const auto n = total();
  return n == 0 || static_cast<double>(exhausted) > exhausted_cap * static_cast<double>(n);
}

std::optional<double> Tally::p_sat(double exhausted_cap) const noexcept {
  if (flagged(exhausted_cap) || sat + unsat == 0) return std::nullopt;
  return static_cast<double>(sat) / static_cast<double>(sat + unsat);
}

void Tally::add(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Sat:
      ++sat;
      break;
    case Verdict::Unsat:
      ++unsat;
      break;
    case Verdict::Exhausted:
      ++exhausted;
      break;
  }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t r_index, std::size_t s_index, std::uint64_t trial) {
  return derive_seed(master_seed, {r_index, s_index, trial});
}

void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ScanResult scan(const GridSpec& spec, unsigned workers) {
  spec.validate();
  ScanResult result;
  result.spec = spec;
  const std::size_t rows = spec.r_values.size();
  const std::size_t cols = spec.s_values.size();
  const std::size_t cells = rows * cols;
  const std::size_t tasks = cells * spec.trials_per_cell;

  std::vector<Verdict> verdicts(tasks, Verdict::Exhausted);
  run_parallel(tasks, workers, [&](std::size_t task) {
    const std::size_t cell = task / spec.trials_per_cell;
    const std::uint64_t trial = task % spec.trials_per_cell;
    const std::size_t i = cell / cols;
    const std::size_t j = cell % cols;
    const RandomModelParams params{spec.k, spec.n, spec.r_values[i], spec.s_values[j]};
    const auto formula = sample_formula(params, trial_seed(spec.master_seed, i, j, trial));
    verdicts[task] = solve(formula, spec.budget, spec.solver).verdict;
  });

  result.cells.reserve(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    CellResult c;
    c.r_index = cell / cols;
    c.s_index = cell % cols;
    c.r = spec.r_values[c.r_index];
    c.s = spec.s_values[c.s_index];
    for (std::uint64_t t = 0; t < spec.trials_per_cell; ++t) c.tally.add(verdicts[cell * spec.trials_per_cell + t]);
    result.cells.push_back(c);
  }
  return result;
}

void write_scan_csv(const ScanResult& result, std::ostream& out) {
  out << "k,n,r,s,trials,sat,unsat,exhausted,p_sat\n";
  for (const auto& c : result.cells) {
    out << result.spec.k << ',' << result.spec.n << ',' << format_double(c.r) << ',' << format_double(c.s) << ','
        << c.tally.total() << ',' << c.tally.sat << ',' << c.tally.unsat << ',' << c.tally.exhausted << ',';
    if (const auto p = c.tally.p_sat(result.spec.exhausted_cap)) out << format_double(*p);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed to write scan CSV");
}

char axis_name(Axis axis) noexcept { return axis == Axis::R ? 'r' : 's'; }

void CrossingSpec::validate() const {
  RandomModelParams{k, n, 0.0, 0.0}.validate();
  require_density(fixed_value, "fixed density");
  require_density(search_low, "search_low");
  if (!(search_high > search_low)) throw InvalidParams("search interval must satisfy low < high");
  if (trials_per_probe < 1) throw InvalidParams("trials per probe must be at least 1");
  if (!(target > 0.0 && target < 1.0)) throw InvalidParams("target must lie in (0, 1)");
  if (!(resolution > 0.0)) throw InvalidParams("resolution must be positive");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidParams("confidence must lie in (0, 1)");
}

double CrossingEstimate::exhausted_fraction() const noexcept {
  return trials_used == 0 ? 0.0 : static_cast<double>(exhausted) / static_cast<double>(trials_used);
}

namespace {

Probe run_probe(const CrossingSpec& spec, double density, unsigned workers) {
  std::vector<Verdict> verdicts(spec.trials_per_probe, Verdict::Exhausted);
  const double r = spec.fixed_axis == Axis::R ? spec.fixed_value : density;
  const double s = spec.fixed_axis == Axis::R ? density : spec.fixed_value;
  const RandomModelParams params{spec.k, spec.n, r, s};
  run_parallel(spec.trials_per_probe, workers, [&](std::size_t t) {
    const auto formula = sample_formula(params, derive_seed(spec.seed, {t}));
    verdicts[t] = solve(formula, spec.budget, spec.solver).verdict;
  });
  Probe probe;
  probe.density = density;
  for (auto v : verdicts) probe.tally.add(v);
  probe.interval = stats::wilson_two_sided(probe.tally.sat, probe.tally.sat + probe.tally.unsat, spec.confidence);
  return probe;
}

double decided_p(const Probe& probe) {
  const auto decided = probe.tally.sat + probe.tally.unsat;
  return decided == 0 ? 0.5 : static_cast<double>(probe.tally.sat) / static_cast<double>(decided);
}

}  // namespace

CrossingEstimate estimate_crossing(const CrossingSpec& spec, unsigned workers) {
  spec.validate();
  CrossingEstimate est;
  est.k = spec.k;
  est.n = spec.n;
  est.fixed_axis = spec.fixed_axis;
  est.fixed_value = spec.fixed_value;

  auto probe = [&](double density) -> const Probe& {
    est.probes.push_back(run_probe(spec, density, workers));
    const auto& p = est.probes.back();
    est.trials_used += p.tally.total();
    est.exhausted += p.tally.exhausted;
    return p;
  };

  double lo = spec.search_low;
  double hi = spec.search_high;
  const Probe& low_probe = probe(lo);
  const bool low_flagged = low_probe.tally.flagged(spec.exhausted_cap);
  const double p_lo = decided_p(low_probe);
  const Probe& high_probe = probe(hi);
  const bool high_flagged = high_probe.tally.flagged(spec.exhausted_cap);
  const double p_hi = decided_p(high_probe);
  if (low_flagged || high_flagged)
    throw NotBracketed("the probe at " + format_double(low_flagged ? lo : hi) +
                       " exceeded the exhausted-trial cap; raise the budget or narrow the search");
  if (!(p_lo > spec.target) || !(p_hi < spec.target))
    throw NotBracketed("P(sat) is " + format_double(p_lo) + " at " + format_double(lo) + " and " +
                       format_double(p_hi) + " at " + format_double(hi) + "; the target " +
                       format_double(spec.target) + " is not bracketed");

  while (hi - lo > spec.resolution) {
    const double mid = lo + (hi - lo) / 2.0;
    const Probe& p = probe(mid);
    if (p.tally.flagged(spec.exhausted_cap)) {
      est.stopped_on_flagged_probe = true;
      break;
    }
    (decided_p(p) >= spec.target ? lo : hi) = mid;
  }

  est.crossing = lo + (hi - lo) / 2.0;
  est.ci_low = spec.search_low;
  est.ci_high = spec.search_high;
  for (const auto& p : est.probes) {
    if (p.tally.sat + p.tally.unsat == 0) continue;
    if (p.interval.low > spec.target) est.ci_low = std::max(est.ci_low, p.density);
    if (p.interval.high < spec.target) est.ci_high = std::min(est.ci_high, p.density);
  }
  est.ci_low = std::min(est.ci_low, est.crossing);
  est.ci_high = std::max(est.ci_high, est.crossing);
  return est;
}

void write_crossings_csv(std::span<const CrossingEstimate> estimates, std::ostream& out) {
  out << "k,n,axis,fixed_value,crossing,ci_low,ci_high,trials_used\n";
  for (const auto& e : estimates)
    out << e.k << ',' << e.n << ',' << axis_name(e.fixed_axis) << ',' << format_double(e.fixed_value) << ','
        << format_double(e.crossing) << ',' << format_double(e.ci_low) << ',' << format_double(e.ci_high) << ','
        << e.trials_used << '\n';
  if (!out) throw std::runtime_error("failed to write crossings CSV");
}

SlopeFit fit_slope(std::uint32_t k, Var n, std::span<const std::pair<double, double>> crossings) {
  std::set<double> distinct;
  for (const auto& c : crossings) distinct.insert(c.first);
  if (distinct.size() < 3)
    throw InsufficientData("slope fit needs at least 3 distinct r values, got " + std::to_string(distinct.size()));

  SlopeFit fit;
  fit.k = k;
  fit.n = n;
  fit.crossings.assign(crossings.begin(), crossings.end());

  const double count = static_cast<double>(crossings.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : crossings) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  double sum_x2 = 0.0;
  double sum_x_y1 = 0.0;
  for (const auto& [x, y] : crossings) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
    sum_x2 += x * x;
    sum_x_y1 += x * (y - 1.0);
  }

  auto r_squared = [&](double slope, double intercept) {
    double residual = 0.0;
    for (const auto& [x, y] : crossings) {
      const double e = y - (intercept + slope * x);
      residual += e * e;
    }
    if (syy == 0.0) return residual == 0.0 ? 1.0 : 0.0;
    return 1.0 - residual / syy;
  };

  fit.free_intercept.slope = sxy / sxx;
  fit.free_intercept.intercept = mean_y - fit.free_intercept.slope * mean_x;
  fit.free_intercept.r_squared = r_squared(fit.free_intercept.slope, fit.free_intercept.intercept);
  fit.unit_intercept.slope = sum_x_y1 / sum_x2;
  fit.unit_intercept.intercept = 1.0;
  fit.unit_intercept.r_squared = r_squared(fit.unit_intercept.slope, 1.0);
  return fit;
}

nlohmann::json spec_json(const GridSpec& spec) {
  return {
      {"k", spec.k},
      {"n", spec.n},
      {"r_values", spec.r_values},
      {"s_values", spec.s_values},
      {"trials_per_cell", spec.trials_per_cell},
      {"budget", budget_json(spec.budget)},
      {"master_seed", spec.master_seed},
      {"solver", mode_name(spec.solver.mode)},
      {"exhausted_cap", spec.exhausted_cap},
      {"rng", std::string(kRngName)},
  };
}

nlohmann::json spec_json(const CrossingSpec& spec) {
  return {
      {"k", spec.k},
      {"n", spec.n},
      {"fixed_axis", std::string(1, axis_name(spec.fixed_axis))},
      {"fixed_value", spec.fixed_value},
      {"search_interval", {spec.search_low, spec.search_high}},
      {"trials_per_probe", spec.trials_per_probe},
      {"target", spec.target},
      {"seed", spec.seed},
      {"resolution", spec.resolution},
      {"confidence", spec.confidence},
      {"budget", budget_json(spec.budget)},
      {"solver", mode_name(spec.solver.mode)},
      {"exhausted_cap", spec.exhausted_cap},
      {"rng", std::string(kRngName)},
  };
}

nlohmann::json estimate_json(const CrossingEstimate& e) {
  auto probes = nlohmann::json::array();
  for (const auto& p : e.probes)
    probes.push_back({{"density", p.density},
                      {"sat", p.tally.sat},
                      {"unsat", p.tally.unsat},
                      {"exhausted", p.tally.exhausted},
                      {"wilson", {p.interval.low, p.interval.high}}});
  return {
      {"k", e.k},
      {"n", e.n},
      {"fixed_axis", std::string(1, axis_name(e.fixed_axis))},
      {"fixed_value", e.fixed_value},
      {"crossing", e.crossing},
      {"ci", {e.ci_low, e.ci_high}},
      {"trials_used", e.trials_used},
      {"exhausted", e.exhausted},
      {"stopped_on_flagged_probe", e.stopped_on_flagged_probe},
      {"probes", std::move(probes)},
  };
}

nlohmann::json fit_json(const SlopeFit& fit) {
  auto points = nlohmann::json::array();
  for (const auto& [r, s] : fit.crossings) points.push_back({r, s});
  auto line = [](const LineFit& l) {
    return nlohmann::json{{"slope", l.slope}, {"intercept", l.intercept}, {"r_squared", l.r_squared}};
  };
  return {
      {"k", fit.k},
      {"n", fit.n},
      {"crossings", std::move(points)},
      {"free_intercept", line(fit.free_intercept)},
      {"unit_intercept", line(fit.unit_intercept)},
  };
}

}  // namespace cnfxor::lab
