#include "cnfxor/formula.hpp"

#include <algorithm>
#include <cmath>
#include <string>


#include "cnfxor/error.hpp"
#include "cnfxor/serialization.hpp"

namespace cnfxor {

std::uint64_t clause_count(double density, Var n) {
  if (!(density >= 0.0) || !std::isfinite(density))
    throw InvalidParams("density must be a finite non-negative number");
  const double product = density * static_cast<double>(n);
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(product));
}

std::uint64_t RandomModelParams::cnf_count() const { return clause_count(r, n); }
std::uint64_t RandomModelParams::xor_count() const { return clause_count(s, n); }

void RandomModelParams::validate() const {
  if (n < 1) throw InvalidParams("n must be at least 1");
  if (k < 1) throw InvalidParams("k must be at least 1");
  if (k > n)
    throw InvalidParams("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  if (!(r >= 0.0) || !(s >= 0.0) || !std::isfinite(r) || !std::isfinite(s))
    throw InvalidParams("densities must be finite and non-negative");
}

KClause sample_k_clause(Var n, std::uint32_t k, Rng& rng) {
  if (k < 1 || k > n)
    throw InvalidParams("k-clause width " + std::to_string(k) + " invalid for n = " + std::to_string(n));
  // Floyd's subset sampling: k distinct values from [0, n), uniform over subsets.
  std::vector<Var> chosen;
  chosen.reserve(k);
  for (Var j = n - k; j < n; ++j) {
    const auto t = static_cast<Var>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  std::sort(chosen.begin(), chosen.end());
  KClause clause;
  clause.literals.reserve(k);
  for (auto v : chosen) clause.literals.push_back({v + 1, rng.coin()});
  return clause;
}

XorClause sample_xor_clause(Var n, Rng& rng) {
  XorClause clause;
  for (Var base = 0; base < n; base += 64) {
    const std::uint64_t word = rng.next();
    const Var span = std::min<Var>(64, n - base);
    for (Var b = 0; b < span; ++b)
      if ((word >> b) & 1U) clause.vars.push_back(base + b + 1);
  }
  clause.rhs = rng.coin();
  return clause;
}

Formula sample_formula(const RandomModelParams& params, std::uint64_t seed) {
  params.validate();
  Formula f;
  f.n = params.n;
  f.k = params.k;
  const auto m_cnf = params.cnf_count();
  const auto m_xor = params.xor_count();
  f.cnf.reserve(m_cnf);
  f.xors.reserve(m_xor);
  for (std::uint64_t i = 0; i < m_cnf; ++i) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::KClause), i}));
    f.cnf.push_back(sample_k_clause(params.n, params.k, rng));
  }
  for (std::uint64_t i = 0; i < m_xor; ++i) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::XorClause), i}));
    f.xors.push_back(sample_xor_clause(params.n, rng));
  }
  return f;
}

bool evaluate(const KClause& clause, const Assignment& a) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](Literal lit) { return a.satisfies(lit); });
}

bool evaluate(const XorClause& clause, const Assignment& a) {
  bool parity = false;
  for (auto v : clause.vars) parity ^= a.value(v);
  return parity == clause.rhs;
}

bool evaluate(const Formula& formula, const Assignment& a) {
  if (a.size() != formula.n)
    throw LengthMismatch("assignment has " + std::to_string(a.size()) + " values, formula has " +
                         std::to_string(formula.n) + " variables");
  for (const auto& c : formula.cnf)
    if (!evaluate(c, a)) return false;
  for (const auto& x : formula.xors)
    if (!evaluate(x, a)) return false;
  return true;
}

void to_json(nlohmann::json& j, const Formula& f) {
  auto cnf = nlohmann::json::array();
  for (const auto& c : f.cnf) {
    auto lits = nlohmann::json::array();
    for (auto lit : c.literals) lits.push_back(lit.dimacs());
    cnf.push_back(std::move(lits));
  }
  auto xors = nlohmann::json::array();
  for (const auto& x : f.xors) xors.push_back({{"vars", x.vars}, {"rhs", x.rhs ? 1 : 0}});
  j = nlohmann::json{{"n", f.n}, {"k", f.k}, {"cnf", std::move(cnf)}, {"xor", std::move(xors)}};
}

void from_json(const nlohmann::json& j, Formula& f) {
  f = Formula{};
  j.at("n").get_to(f.n);
  j.at("k").get_to(f.k);
  for (const auto& lits : j.at("cnf")) {
    KClause c;
    for (const auto& code : lits) c.literals.push_back(Literal::from_dimacs(code.get<int>()));
    f.cnf.push_back(std::move(c));
  }
  for (const auto& x : j.at("xor")) {
    XorClause clause;
    x.at("vars").get_to(clause.vars);
    clause.rhs = x.at("rhs").get<int>() != 0;
    f.xors.push_back(std::move(clause));
  }
}

}  // namespace cnfxor
