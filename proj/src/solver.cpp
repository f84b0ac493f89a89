#include "cnfxor/solver.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cnfxor/bitvector.hpp"

namespace cnfxor {

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Sat:
      return "SAT";
    case Verdict::Unsat:
      return "UNSAT";
    case Verdict::Exhausted:
      return "EXHAUSTED";
  }
  return "EXHAUSTED";
}

bool check_model(const Formula& formula, const Assignment& assignment) {
  return evaluate(formula, assignment);
}

namespace {

// Internal literal code: 2 * var + negated, variables 0-based.
using Lit = std::uint32_t;
constexpr Lit make_lit(std::size_t var, bool negated) { return static_cast<Lit>(2 * var + (negated ? 1 : 0)); }
constexpr std::size_t var_of(Lit l) { return l >> 1; }
constexpr Lit negate(Lit l) { return l ^ 1U; }

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::int8_t kUnassigned = -1;

enum class ReasonKind : std::uint8_t { None, Clause, Xor };

struct Reason {
  ReasonKind kind = ReasonKind::None;
  std::uint32_t index = 0;
};

enum class Status { Sat, Unsat, Exhausted };

class Engine {
 public:
  Engine(const Formula& formula, const SolveBudget& budget, const SolverOptions& options)
      : formula_(formula),
        budget_(budget),
        learning_(options.mode == SearchMode::Cdcl),
        n_(formula.n),
        assign_(n_, kUnassigned),
        level_(n_, 0),
        reason_(n_),
        seen_(n_, 0),
        watches_(2 * n_),
        unassigned_(n_),
        true_(n_),
        in_cnf_(n_, false) {
    for (std::size_t v = 0; v < n_; ++v) unassigned_.set(v);
  }

  Status run() {
    start_ = std::chrono::steady_clock::now();
    if (!load()) return Status::Unsat;
    if (!propagate()) return Status::Unsat;

    while (true) {
      const std::size_t next = pick_branch_var();
      if (next == kNone) return Status::Sat;
      if (out_of_time()) return Status::Exhausted;
      ++stats_.decisions;
      new_level();
      enqueue(make_lit(next, false), {});

      while (!propagate()) {
        ++stats_.conflicts;
        if (budget_.max_conflicts && stats_.conflicts >= *budget_.max_conflicts) return Status::Exhausted;
        if ((stats_.conflicts & 255U) == 0 && out_of_time()) return Status::Exhausted;
        if (!(learning_ ? learn_and_backjump() : flip_last_decision())) return Status::Unsat;
      }
    }
  }

  Assignment model() const {
    Assignment a(static_cast<Var>(n_));
    for (std::size_t v = 0; v < n_; ++v) a.set(static_cast<Var>(v + 1), assign_[v] == 1);
    // Free XOR columns default to false; each pivot is then fixed by its row.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivot_of_row_[r];
      if (p == kNone) continue;
      a.set(static_cast<Var>(p + 1), rhs_[r] != rows_[r].and_parity(true_));
    }
    return a;
  }

  const SolveStats& stats() const { return stats_; }

  void finish_stats() {
    stats_.elapsed = std::chrono::steady_clock::now() - start_;
    stats_.learned = learned_total_;
  }

 private:
  // ---- loading -----------------------------------------------------------

  bool load() {
    for (const auto& x : formula_.xors) {
      if (x.vars.empty()) {
        if (x.rhs) return false;  // empty XOR with rhs 1
        continue;
      }
      BitVector row(n_);
      for (auto v : x.vars) row.flip(v - 1);
      rows_.push_back(std::move(row));
      rhs_.push_back(x.rhs);
    }
    pivot_of_row_.assign(rows_.size(), kNone);
    row_of_pivot_.assign(n_, kNone);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = rows_[r].find_first_and(unassigned_);
      if (c == kNone) {
        if (rhs_[r]) return false;
        continue;
      }
      make_pivot(r, c);
    }

    for (const auto& clause : formula_.cnf) {
      std::vector<Lit> lits;
      lits.reserve(clause.literals.size());
      for (auto lit : clause.literals) {
        lits.push_back(make_lit(lit.variable - 1, lit.negated));
        in_cnf_[lit.variable - 1] = true;
      }
      if (lits.empty()) return false;
      if (lits.size() == 1) {
        units_.push_back(lits[0]);
        continue;
      }
      add_clause(std::move(lits), false);
    }
    for (auto u : units_) {
      const auto value = lit_value(u);
      if (value == 0) return false;
      if (value == kUnassigned) enqueue(u, {});
    }
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!check_row(r)) return false;
    return true;
  }

  std::uint32_t add_clause(std::vector<Lit> lits, bool learned) {
    const auto index = static_cast<std::uint32_t>(clauses_.size());
    watches_[lits[0]].push_back(index);
    watches_[lits[1]].push_back(index);
    clauses_.push_back(std::move(lits));
    learned_flag_.push_back(learned);
    return index;
  }

  // ---- assignment --------------------------------------------------------

  std::int8_t lit_value(Lit l) const {
    const auto a = assign_[var_of(l)];
    if (a == kUnassigned) return kUnassigned;
    return static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(l & 1U));
  }

  void enqueue(Lit l, Reason reason) {
    const std::size_t v = var_of(l);
    assert(assign_[v] == kUnassigned);
    const bool value = (l & 1U) == 0;
    assign_[v] = value ? 1 : 0;
    level_[v] = static_cast<std::uint32_t>(levels_.size());
    reason_[v] = reason;
    unassigned_.reset(v);
    if (value) true_.set(v);
    trail_.push_back(l);
  }

  std::size_t decision_level() const { return levels_.size(); }

  void new_level() {
    levels_.push_back({trail_.size(), xor_reasons_.size(), false});
  }

  void backtrack_to(std::size_t level) {
    if (decision_level() <= level) return;
    const std::size_t keep = levels_[level].trail_start;
    for (std::size_t i = trail_.size(); i-- > keep;) {
      const std::size_t v = var_of(trail_[i]);
      assign_[v] = kUnassigned;
      reason_[v] = {};
      unassigned_.set(v);
      true_.reset(v);
      if (v < branch_hint_) branch_hint_ = v;
    }
    trail_.resize(keep);
    xor_reasons_.resize(levels_[level].xor_reason_start);
    levels_.resize(level);
    qhead_ = trail_.size();
    repair_rows();
  }

  std::size_t pick_branch_var() {
    while (branch_hint_ < n_ && (assign_[branch_hint_] != kUnassigned || !in_cnf_[branch_hint_])) ++branch_hint_;
    return branch_hint_ < n_ ? branch_hint_ : kNone;
  }

  bool out_of_time() const {
    if (!budget_.wall_timeout) return false;
    return std::chrono::steady_clock::now() - start_ >= *budget_.wall_timeout;
  }

  // ---- propagation -------------------------------------------------------

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      ++stats_.propagations;
      if (!propagate_clauses(p)) return false;
      if (!rows_.empty() && !propagate_xor(var_of(p))) return false;
    }
    return true;
  }

  bool propagate_clauses(Lit p) {
    const Lit false_lit = negate(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0;
    std::size_t j = 0;
    bool ok = true;
    while (i < ws.size()) {
      const std::uint32_t ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(c[0]) == 0) {
        set_conflict_from_clause(ci);
        while (i < ws.size()) ws[j++] = ws[i++];
        ok = false;
        break;
      }
      enqueue(c[0], {ReasonKind::Clause, ci});
    }
    ws.resize(j);
    return ok;
  }

  // Rows are kept in reduced row-echelon form relative to the unassigned
  // columns: every pivot is unassigned and occurs in no other row; rows
  // without a pivot have no unassigned column left.

  void make_pivot(std::size_t r, std::size_t c) {
    pivot_of_row_[r] = c;
    row_of_pivot_[c] = r;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (j != r && rows_[j].test(c)) {
        rows_[j] ^= rows_[r];
        rhs_[j] ^= rhs_[r];
        touched_.push_back(j);
      }
    }
  }

  bool propagate_xor(std::size_t v) {
    touched_.clear();
    const std::size_t r = row_of_pivot_[v];
    if (r != kNone) {
      row_of_pivot_[v] = kNone;
      pivot_of_row_[r] = kNone;
      const std::size_t c = rows_[r].find_first_and(unassigned_);
      if (c != kNone) make_pivot(r, c);
      touched_.push_back(r);
    }
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (rows_[j].test(v)) touched_.push_back(j);
    for (auto j : touched_)
      if (!check_row(j)) return false;
    return true;
  }

  // Conflict on 0 = 1, implication when one unassigned column remains.
  bool check_row(std::size_t r) {
    const auto& row = rows_[r];
    const std::size_t open = row.and_count(unassigned_, 2);
    if (open >= 2) return true;
    const bool parity = row.and_parity(true_);
    if (open == 0) {
      if (parity == static_cast<bool>(rhs_[r])) return true;
      set_conflict_from_row(r);
      return false;
    }
    const std::size_t u = row.find_first_and(unassigned_);
    const bool value = static_cast<bool>(rhs_[r]) != parity;
    const Lit implied = make_lit(u, !value);
    Reason reason{};
    if (learning_) reason = {ReasonKind::Xor, materialize_xor_reason(r, implied)};
    enqueue(implied, reason);
    return true;
  }

  void repair_rows() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (pivot_of_row_[r] != kNone) continue;
      const std::size_t c = rows_[r].find_first_and(unassigned_);
      if (c != kNone) make_pivot(r, c);
    }
    touched_.clear();
  }

  // ---- conflicts ---------------------------------------------------------

  void set_conflict_from_clause(std::uint32_t ci) {
    if (!learning_) return;
    conflict_ = clauses_[ci];
  }

  // Every column of the row is assigned; the clause forbids exactly that
  // combination of values.
  void set_conflict_from_row(std::size_t r) {
    if (!learning_) return;
    conflict_.clear();
    for (std::size_t v = rows_[r].find_first(); v != kNone; v = rows_[r].find_next(v + 1))
      conflict_.push_back(make_lit(v, assign_[v] == 1));
  }

  std::uint32_t materialize_xor_reason(std::size_t r, Lit implied) {
    std::vector<Lit> lits{implied};
    const std::size_t iv = var_of(implied);
    for (std::size_t v = rows_[r].find_first(); v != kNone; v = rows_[r].find_next(v + 1))
      if (v != iv) lits.push_back(make_lit(v, assign_[v] == 1));
    xor_reasons_.push_back(std::move(lits));
    return static_cast<std::uint32_t>(xor_reasons_.size() - 1);
  }

  const std::vector<Lit>& reason_lits(std::size_t v) const {
    const Reason& reason = reason_[v];
    return reason.kind == ReasonKind::Clause ? clauses_[reason.index] : xor_reasons_[reason.index];
  }

  bool flip_last_decision() {
    while (!levels_.empty() && levels_.back().flipped) backtrack_to(decision_level() - 1);
    if (levels_.empty()) return false;
    const std::size_t level = decision_level();
    const Lit decision = trail_[levels_.back().trail_start];
    backtrack_to(level - 1);
    new_level();
    levels_.back().flipped = true;
    enqueue(negate(decision), {});
    return true;
  }

  bool learn_and_backjump() {
    if (decision_level() == 0) return false;
    std::vector<Lit> learnt{0};
    std::size_t open = 0;
    std::size_t index = trail_.size();
    Lit p = 0;
    bool first = true;
    std::vector<Lit> clause = conflict_;
    const auto current = static_cast<std::uint32_t>(decision_level());

    while (true) {
      for (Lit q : clause) {
        const std::size_t v = var_of(q);
        if (!first && v == var_of(p)) continue;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        if (level_[v] >= current)
          ++open;
        else
          learnt.push_back(q);
      }
      do {
        --index;
      } while (!seen_[var_of(trail_[index])]);
      p = trail_[index];
      seen_[var_of(p)] = 0;
      first = false;
      if (--open == 0) break;
      clause = reason_lits(var_of(p));
    }
    learnt[0] = negate(p);
    for (std::size_t i = 1; i < learnt.size(); ++i) seen_[var_of(learnt[i])] = 0;

    std::size_t jump = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[var_of(learnt[i])] > level_[var_of(learnt[best])]) best = i;
      std::swap(learnt[1], learnt[best]);
      jump = level_[var_of(learnt[1])];
    }
    backtrack_to(jump);
    ++learned_total_;
    if (learnt.size() == 1) {
      enqueue(learnt[0], {});
    } else {
      const Lit asserting = learnt[0];
      const auto ci = add_clause(std::move(learnt), true);
      ++learned_live_;
      enqueue(asserting, {ReasonKind::Clause, ci});
      if (learned_live_ > max_learned_) reduce_learned();
    }
    return true;
  }

  // Drops the longer half of the learned clauses that are not reasons.
  void reduce_learned() {
    std::vector<bool> locked(clauses_.size(), false);
    for (Lit l : trail_) {
      const Reason& reason = reason_[var_of(l)];
      if (reason.kind == ReasonKind::Clause) locked[reason.index] = true;
    }
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t i = 0; i < clauses_.size(); ++i)
      if (learned_flag_[i] && !locked[i]) candidates.push_back(i);
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::uint32_t a, std::uint32_t b) {
      return clauses_[a].size() > clauses_[b].size();
    });
    std::vector<bool> drop(clauses_.size(), false);
    for (std::size_t i = 0; i < candidates.size() / 2; ++i) drop[candidates[i]] = true;

    std::vector<std::uint32_t> remap(clauses_.size(), 0);
    std::size_t out = 0;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      if (drop[i]) continue;
      remap[i] = static_cast<std::uint32_t>(out);
      if (out != i) {
        clauses_[out] = std::move(clauses_[i]);
        learned_flag_[out] = learned_flag_[i];
      }
      ++out;
    }
    learned_live_ -= candidates.size() / 2;
    clauses_.resize(out);
    learned_flag_.resize(out);
    for (Lit l : trail_) {
      Reason& reason = reason_[var_of(l)];
      if (reason.kind == ReasonKind::Clause) reason.index = remap[reason.index];
    }
    for (auto& ws : watches_) ws.clear();
    for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
      watches_[clauses_[i][0]].push_back(i);
      watches_[clauses_[i][1]].push_back(i);
    }
    max_learned_ += max_learned_ / 10;
  }

  struct Level {
    std::size_t trail_start;
    std::size_t xor_reason_start;
    bool flipped;
  };

  const Formula& formula_;
  SolveBudget budget_;
  bool learning_;
  std::size_t n_;

  std::vector<std::int8_t> assign_;
  std::vector<std::uint32_t> level_;
  std::vector<Reason> reason_;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<Level> levels_;
  std::size_t qhead_ = 0;
  std::size_t branch_hint_ = 0;

  std::vector<std::vector<Lit>> clauses_;
  std::vector<bool> learned_flag_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Lit> units_;
  std::vector<Lit> conflict_;
  std::size_t learned_live_ = 0;
  std::size_t learned_total_ = 0;
  std::size_t max_learned_ = 20000;

  std::vector<BitVector> rows_;
  std::vector<std::uint8_t> rhs_;
  std::vector<std::size_t> pivot_of_row_;
  std::vector<std::size_t> row_of_pivot_;
  std::vector<std::size_t> touched_;
  std::vector<std::vector<Lit>> xor_reasons_;
  BitVector unassigned_;
  BitVector true_;
  std::vector<bool> in_cnf_;

  SolveStats stats_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveOutcome solve(const Formula& formula, const SolveBudget& budget, const SolverOptions& options) {
  Engine engine(formula, budget, options);
  const Status status = engine.run();
  engine.finish_stats();
  SolveOutcome outcome;
  outcome.stats = engine.stats();
  switch (status) {
    case Status::Sat: {
      Assignment model = engine.model();
      if (!check_model(formula, model)) throw std::logic_error("solver produced a model that fails evaluation");
      outcome.verdict = Verdict::Sat;
      outcome.model = std::move(model);
      break;
    }
    case Status::Unsat:
      outcome.verdict = Verdict::Unsat;
      break;
    case Status::Exhausted:
      outcome.verdict = Verdict::Exhausted;
      break;
  }
  return outcome;
}

}  // namespace cnfxor
