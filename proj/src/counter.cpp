#include "cnfxor/counter.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "cnfxor/error.hpp"
#include "cnfxor/statistics.hpp"

namespace cnfxor {

std::string_view to_string(CountMethod method) noexcept {
  return method == CountMethod::XorAffineEnumeration ? "xor-affine-enumeration" : "full-enumeration";
}

namespace {

// k-clauses as positive/negative masks over packed assignment words.
class ClauseMasks {
 public:
  explicit ClauseMasks(const Formula& f) : words_((f.n + 63) / 64) {
    masks_.reserve(f.cnf.size() * 2 * words_);
    for (const auto& clause : f.cnf) {
      const std::size_t base = masks_.size();
      masks_.resize(base + 2 * words_, 0);
      for (auto lit : clause.literals) {
        const std::size_t bit = lit.variable - 1;
        const std::size_t slot = base + (lit.negated ? words_ : 0) + bit / 64;
        masks_[slot] |= std::uint64_t{1} << (bit % 64);
      }
      if (clause.literals.empty()) has_empty_ = true;
    }
    clauses_ = f.cnf.size();
  }

  bool satisfied(const std::uint64_t* a) const {
    if (has_empty_) return false;
    const std::uint64_t* m = masks_.data();
    for (std::size_t c = 0; c < clauses_; ++c, m += 2 * words_) {
      std::uint64_t hit = 0;
      for (std::size_t w = 0; w < words_; ++w) hit |= (a[w] & m[w]) | (~a[w] & m[words_ + w]);
      if (hit == 0) return false;
    }
    return true;
  }

 private:
  std::size_t words_;
  std::size_t clauses_ = 0;
  bool has_empty_ = false;
  std::vector<std::uint64_t> masks_;
};

gf2::System xor_system(const Formula& f) {
  gf2::System system(f.n);
  std::vector<std::size_t> columns;
  for (const auto& x : f.xors) {
    columns.clear();
    for (auto v : x.vars) columns.push_back(v - 1);
    system.add_equation(columns, x.rhs);
  }
  return system;
}

[[noreturn]] void guard_failure(const Formula& f, std::size_t dimension) {
  throw GuardExceeded("count_exact: free dimension " + std::to_string(dimension) + " > " +
                      std::to_string(kMaxAffineDimension) + " and n = " + std::to_string(f.n) + " > " +
                      std::to_string(kMaxFullSweepVariables));
}

}  // namespace

BigCount count_full_sweep(const Formula& f) {
  if (f.n > kMaxFullSweepVariables)
    throw GuardExceeded("count_full_sweep: n = " + std::to_string(f.n) + " exceeds " +
                        std::to_string(kMaxFullSweepVariables));
  const ClauseMasks clauses(f);
  std::vector<std::pair<std::uint64_t, bool>> xors;
  for (const auto& x : f.xors) {
    std::uint64_t mask = 0;
    for (auto v : x.vars) mask |= std::uint64_t{1} << (v - 1);
    xors.emplace_back(mask, x.rhs);
  }
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << f.n;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool ok = true;
    for (const auto& [mask, rhs] : xors) {
      if ((std::popcount(a & mask) & 1) != static_cast<int>(rhs)) {
        ok = false;
        break;
      }
    }
    if (ok && clauses.satisfied(&a)) ++count;
  }
  return count;
}

CountResult count_exact(const Formula& f) {
  CountResult result;
  result.n = f.n;
  if (f.xors.empty()) {
    if (f.n > kMaxFullSweepVariables) guard_failure(f, f.n);
    result.method = CountMethod::FullEnumeration;
    result.count = count_full_sweep(f);
    return result;
  }

  const auto reduced = gf2::row_reduce(xor_system(f));
  result.method = CountMethod::XorAffineEnumeration;
  if (!reduced.consistent) {
    result.count = 0;
    return result;
  }
  if (reduced.free_dimension() > kMaxAffineDimension) {
    if (f.n > kMaxFullSweepVariables) guard_failure(f, reduced.free_dimension());
    result.method = CountMethod::FullEnumeration;
    result.count = count_full_sweep(f);
    return result;
  }
  const ClauseMasks clauses(f);
  std::uint64_t count = 0;
  gf2::enumerate_solutions(reduced, [&](const BitVector& a) {
    if (clauses.satisfied(a.words().data())) ++count;
  });
  result.count = count;
  return result;
}

double log2_exact(const BigCount& count) {
  if (count <= 0) throw InvalidParams("log2_exact: count must be positive");
  const std::size_t bits = boost::multiprecision::msb(count) + 1;
  if (bits <= 53) return std::log2(count.convert_to<double>());
  const std::size_t shift = bits - 53;
  const BigCount top = count >> shift;
  return static_cast<double>(shift) + std::log2(top.convert_to<double>());
}

PhiEstimate estimate_phi(std::uint32_t k, double r, Var n, std::uint64_t trials, std::uint64_t seed) {
  const RandomModelParams params{k, n, r, 0.0};
  params.validate();
  if (trials == 0) throw InvalidParams("estimate_phi: trials must be positive");
  PhiEstimate out{k, r, n, trials, 0, 0.0, 0.0};
  std::vector<double> values;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto f = sample_formula(params, derive_seed(seed, {t}));
    const auto counted = count_exact(f);
    if (counted.count == 0) continue;
    values.push_back(log2_exact(counted.count) / static_cast<double>(n));
  }
  out.sat_trials = values.size();
  if (values.empty())
    throw NoSatInstances("estimate_phi: all " + std::to_string(trials) + " draws were unsatisfiable");
  const auto summary = stats::mean_and_stderr(values);
  out.mean = summary.mean;
  out.std_error = summary.std_error;
  return out;
}

}  // namespace cnfxor
