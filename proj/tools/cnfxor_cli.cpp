#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cnfxor/bounds.hpp"
#include "cnfxor/counter.hpp"
#include "cnfxor/dimacs.hpp"
#include "cnfxor/error.hpp"
#include "cnfxor/format.hpp"
#include "cnfxor/lab.hpp"
#include "cnfxor/manifest.hpp"
#include "cnfxor/serialization.hpp"
#include "cnfxor/solver.hpp"
#include "cnfxor/stattests.hpp"

namespace {

using namespace cnfxor;
using nlohmann::json;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitExhausted = 30;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

// "a:b:step" (inclusive of b within 1e-9), "a,b,c", or a single value.
std::vector<double> parse_values(const std::string& text) {
  auto number = [&](const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty() || !std::isfinite(value))
      throw InvalidParams("bad number '" + token + "' in '" + text + "'");
    return value;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InvalidParams("range '" + text + "' must be start:stop:step");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw InvalidParams("range '" + text + "' needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) out.push_back(number(part));
  if (out.empty()) throw InvalidParams("empty value list");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error("failed to write " + path);
}

Formula read_formula(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParams("cannot open " + path);
  return parse_dimacs_xor(in);
}

SolveBudget make_budget(std::uint64_t max_conflicts, std::uint64_t timeout_ms) {
  SolveBudget budget;
  if (max_conflicts > 0) budget.max_conflicts = max_conflicts;
  if (timeout_ms > 0) budget.wall_timeout = std::chrono::milliseconds(timeout_ms);
  return budget;
}

json budget_json(std::uint64_t max_conflicts, std::uint64_t timeout_ms) {
  return {{"max_conflicts", max_conflicts == 0 ? json(nullptr) : json(max_conflicts)},
          {"timeout_ms", timeout_ms == 0 ? json(nullptr) : json(timeout_ms)}};
}

std::string model_line(const Assignment& model) {
  std::string line = "v";
  for (Var v = 1; v <= model.size(); ++v) line += ' ' + std::to_string(model.value(v) ? int(v) : -int(v));
  return line + " 0";
}

// Flags shared by every subcommand.
struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string manifest;
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, Common& common, bool with_workers = false) {
  cmd->add_option("--seed", common.seed, "master seed");
  cmd->add_option("--out,-o", common.out, "output file (stdout when omitted)");
  cmd->add_option("--manifest", common.manifest, "manifest path (default <out>.manifest.json)");
  if (with_workers) cmd->add_option("--workers,-j", common.workers, "worker threads (0 = all cores)");
}

struct Run {
  RunManifest manifest;
  int exit_code = 0;
};

class Cli {
 public:
  explicit Cli(std::vector<std::string> args) : args_(std::move(args)) { build(); }

  int run() {
    const auto start = std::chrono::steady_clock::now();
    try {
      std::vector<std::string> reversed(args_.rbegin(), args_.rend());
      app_.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app_.exit(e);
    } catch (const CLI::ParseError& e) {
      app_.exit(e);
      return kExitUsage;
    }
    const auto* selected = app_.get_subcommands().front();
    const std::string name = selected->get_name();
    if (name == "replay") return replay();

    Run run;
    run.manifest.command = name;
    run.manifest.args = args_;
    run.manifest.master_seed = common_.seed;
    run.exit_code = handler_.at(name)(run.manifest);

    const auto path = manifest_path();
    if (!path.empty()) {
      run.manifest.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!common_.out.empty()) run.manifest.outputs.push_back(common_.out);
      write_manifest(run.manifest, path);
    }
    return run.exit_code;
  }

 private:
  std::string manifest_path() const {
    if (!common_.manifest.empty()) return common_.manifest;
    if (!common_.out.empty()) return common_.out + ".manifest.json";
    return {};
  }

  void build() {
    app_.name("cnfxor");
    app_.description("Random k-CNF-XOR formulas: generation, solving, counting and phase-transition experiments");
    app_.require_subcommand(1);
    app_.set_version_flag("--version", std::string(kVersion));

    auto* gen = app_.add_subcommand("gen", "sample one formula and write it as DIMACS-XOR");
    add_model(gen);
    add_common(gen, common_);
    handler_["gen"] = [this](RunManifest& m) { return cmd_gen(m); };

    auto* solve_cmd = app_.add_subcommand("solve", "decide a DIMACS-XOR file (exit 10 SAT, 20 UNSAT, 30 EXHAUSTED)");
    solve_cmd->add_option("file", file_, "DIMACS-XOR input")->required();
    add_budget(solve_cmd);
    solve_cmd->add_flag("--cross-check", cross_check_, "also run $CNFXOR_EXTERNAL_SOLVER and compare verdicts");
    add_common(solve_cmd, common_);
    handler_["solve"] = [this](RunManifest& m) { return cmd_solve(m); };

    auto* count = app_.add_subcommand("count", "exact model count of a DIMACS-XOR file");
    count->add_option("file", file_, "DIMACS-XOR input")->required();
    add_common(count, common_);
    handler_["count"] = [this](RunManifest& m) { return cmd_count(m); };

    auto* phi = app_.add_subcommand("phi", "mean log2(#F)/n over satisfiable k-CNF draws");
    phi->add_option("-k", k_, "clause width")->capture_default_str();
    phi->add_option("-n", n_, "variables")->required();
    phi->add_option("-r", r_, "k-clause density")->required();
    phi->add_option("--trials,-t", trials_, "draws")->capture_default_str();
    add_common(phi, common_);
    handler_["phi"] = [this](RunManifest& m) { return cmd_phi(m); };

    auto* bounds_cmd = app_.add_subcommand("bounds", "theoretical transition bounds as CSV");
    bounds_cmd->add_option("-k", k_, "clause width")->capture_default_str();
    bounds_cmd->add_option("--r", r_range_, "r grid: start:stop:step or a comma list")->required();
    bounds_cmd->add_flag("--extrapolate", extrapolate_, "evaluate the lower curve beyond its validity limit");
    add_common(bounds_cmd, common_);
    handler_["bounds"] = [this](RunManifest& m) { return cmd_bounds(m); };

    auto* scan_cmd = app_.add_subcommand("scan", "grid of P(sat) over (r, s) as CSV");
    scan_cmd->add_option("-k", k_, "clause width")->capture_default_str();
    scan_cmd->add_option("-n", n_, "variables")->required();
    scan_cmd->add_option("--r", r_range_, "r grid")->required();
    scan_cmd->add_option("--s", s_range_, "s grid")->required();
    scan_cmd->add_option("--trials,-t", trials_, "trials per cell")->capture_default_str();
    scan_cmd->add_option("--exhausted-cap", exhausted_cap_, "flag cells above this exhausted fraction")
        ->capture_default_str();
    add_budget(scan_cmd);
    add_common(scan_cmd, common_, true);
    handler_["scan"] = [this](RunManifest& m) { return cmd_scan(m); };

    auto* crossing = app_.add_subcommand("crossing", "bisect for the density where P(sat) crosses the target");
    crossing->add_option("-k", k_, "clause width")->capture_default_str();
    crossing->add_option("-n", n_, "variables")->required();
    crossing->add_option("--fix", fix_axis_, "density held fixed: r or s")->check(CLI::IsMember({"r", "s"}))
        ->capture_default_str();
    crossing->add_option("--at", fixed_value_, "value of the fixed density")->capture_default_str();
    add_search(crossing);
    add_budget(crossing);
    add_common(crossing, common_, true);
    handler_["crossing"] = [this](RunManifest& m) { return cmd_crossing(m); };

    auto* slope = app_.add_subcommand("slope", "fit s* = L r + c through XOR-density crossings at several r");
    slope->add_option("-k", k_, "clause width")->capture_default_str();
    slope->add_option("-n", n_, "variables")->required();
    slope->add_option("--r", r_range_, "r values")->required();
    add_search(slope);
    add_budget(slope);
    add_common(slope, common_, true);
    handler_["slope"] = [this](RunManifest& m) { return cmd_slope(m); };

    auto* stattest = app_.add_subcommand("stattest", "statistical checks of the model's probabilistic lemmas");
    stattest->require_subcommand(1);
    auto* pairwise = stattest->add_subcommand("pairwise", "pairwise independence of XOR solutions");
    pairwise->add_option("-n", n_, "variables")->required();
    pairwise->add_option("-m", m_xor_, "XOR clauses")->required();
    pairwise->add_option("--samples", samples_, "sampled systems")->capture_default_str();
    add_common(pairwise, common_);
    auto* residual = stattest->add_subcommand("residual", "P(H and Q sat) given #H = 2^(ceil(sn) +/- alpha)");
    residual->add_option("-n", n_, "variables")->required();
    residual->add_option("-s", s_, "XOR density")->required();
    residual->add_option("--alpha", alpha_, "offset")->capture_default_str();
    residual->add_option("--direction", direction_, "many (sat side) or few (unsat side)")
        ->check(CLI::IsMember({"many", "few"}))
        ->capture_default_str();
    residual->add_option("--samples", samples_, "sampled systems")->capture_default_str();
    add_common(residual, common_);
    auto* markov = stattest->add_subcommand("markov", "Markov tail bound on #F");
    markov->add_option("-k", k_, "clause width")->capture_default_str();
    markov->add_option("-r", r_, "k-clause density")->required();
    markov->add_option("-n", n_, "variables")->required();
    markov->add_option("--eps", epsilon_, "epsilon > 1")->capture_default_str();
    markov->add_option("--samples", samples_, "sampled formulas")->capture_default_str();
    add_common(markov, common_);
    handler_["stattest"] = [this, pairwise, residual](RunManifest& m) {
      if (pairwise->parsed()) return cmd_pairwise(m);
      if (residual->parsed()) return cmd_residual(m);
      return cmd_markov(m);
    };

    auto* replay_cmd = app_.add_subcommand("replay", "re-run the command recorded in a manifest");
    replay_cmd->add_option("manifest", file_, "manifest JSON")->required();
    replay_cmd->add_option("--out,-o", common_.out, "write the output here instead of the recorded path");
  }

  void add_model(CLI::App* cmd) {
    cmd->add_option("-k", k_, "clause width")->capture_default_str();
    cmd->add_option("-n", n_, "variables")->required();
    cmd->add_option("-r", r_, "k-clause density")->capture_default_str();
    cmd->add_option("-s", s_, "XOR-clause density")->capture_default_str();
  }

  void add_budget(CLI::App* cmd) {
    cmd->add_option("--max-conflicts", max_conflicts_, "conflict budget per solve (0 = none)")
        ->capture_default_str();
    cmd->add_option("--timeout-ms", timeout_ms_, "wall-clock budget per solve (0 = none)")->capture_default_str();
    cmd->add_flag("--cdcl", cdcl_, "use clause learning instead of plain DPLL");
  }

  void add_search(CLI::App* cmd) {
    cmd->add_option("--low", low_, "low end of the searched density")->required();
    cmd->add_option("--high", high_, "high end of the searched density")->required();
    cmd->add_option("--trials,-t", trials_, "trials per probe")->capture_default_str();
    cmd->add_option("--target", target_, "P(sat) level")->capture_default_str();
    cmd->add_option("--resolution", resolution_, "stop when the bracket is this narrow")->capture_default_str();
    cmd->add_option("--confidence", confidence_, "Wilson interval level")->capture_default_str();
    cmd->add_option("--exhausted-cap", exhausted_cap_, "stop at probes above this exhausted fraction")
        ->capture_default_str();
  }

  SolverOptions solver_options() const { return {cdcl_ ? SearchMode::Cdcl : SearchMode::Dpll}; }

  lab::CrossingSpec crossing_spec(lab::Axis fixed, double value) const {
    lab::CrossingSpec spec;
    spec.k = k_;
    spec.n = n_;
    spec.fixed_axis = fixed;
    spec.fixed_value = value;
    spec.search_low = low_;
    spec.search_high = high_;
    spec.trials_per_probe = trials_;
    spec.target = target_;
    spec.seed = common_.seed;
    spec.resolution = resolution_;
    spec.confidence = confidence_;
    spec.budget = make_budget(max_conflicts_, timeout_ms_);
    spec.solver = solver_options();
    spec.exhausted_cap = exhausted_cap_;
    return spec;
  }

  int cmd_gen(RunManifest& m) {
    const RandomModelParams params{k_, n_, r_, s_};
    params.validate();
    const auto f = sample_formula(params, common_.seed);
    write_text(common_.out, to_dimacs_xor(f));
    (common_.out.empty() ? std::cerr : std::cout)
        << "c cnf_clauses=" << f.cnf.size() << " xor_clauses=" << f.xors.size() << '\n';
    m.config = {{"k", k_}, {"n", n_}, {"r", r_}, {"s", s_}};
    m.results = {{"cnf_clauses", f.cnf.size()}, {"xor_clauses", f.xors.size()}};
    return 0;
  }

  int cmd_solve(RunManifest& m) {
    const auto f = read_formula(file_);
    const auto outcome = solve(f, make_budget(max_conflicts_, timeout_ms_), solver_options());
    std::string text = std::string(to_string(outcome.verdict)) + '\n';
    if (outcome.model) text += model_line(*outcome.model) + '\n';
    std::cout << text;
    if (!common_.out.empty()) write_text(common_.out, text);
    m.config = {{"file", file_}, {"budget", budget_json(max_conflicts_, timeout_ms_)}, {"cdcl", cdcl_}};
    m.results = {{"verdict", to_string(outcome.verdict)},
                 {"decisions", outcome.stats.decisions},
                 {"propagations", outcome.stats.propagations},
                 {"conflicts", outcome.stats.conflicts}};
    if (cross_check_) {
      const char* external = std::getenv("CNFXOR_EXTERNAL_SOLVER");
      if (external == nullptr || *external == '\0')
        throw InvalidParams("--cross-check needs CNFXOR_EXTERNAL_SOLVER to name a solver binary");
      const auto other = solve_external(f, external);
      std::cout << "c external " << to_string(other) << '\n';
      m.results["external_verdict"] = to_string(other);
      if (other != Verdict::Exhausted && outcome.verdict != Verdict::Exhausted && other != outcome.verdict) {
        std::cerr << "cnfxor: external solver disagrees\n";
        return 1;
      }
    }
    switch (outcome.verdict) {
      case Verdict::Sat: return kExitSat;
      case Verdict::Unsat: return kExitUnsat;
      case Verdict::Exhausted: return kExitExhausted;
    }
    return kExitExhausted;
  }

  int cmd_count(RunManifest& m) {
    const auto f = read_formula(file_);
    const auto result = count_exact(f);
    const json j = {{"count", result.count.str()}, {"n", result.n}, {"method", to_string(result.method)}};
    write_text(common_.out, j.dump(2) + '\n');
    m.config = {{"file", file_}};
    m.results = j;
    return 0;
  }

  int cmd_phi(RunManifest& m) {
    const auto phi = estimate_phi(k_, r_, n_, trials_, common_.seed);
    const json j = {{"k", phi.k},         {"r", phi.r},       {"n", phi.n},
                    {"trials", phi.trials}, {"sat_trials", phi.sat_trials},
                    {"mean", phi.mean},   {"std_error", phi.std_error}};
    write_text(common_.out, j.dump(2) + '\n');
    m.config = {{"k", k_}, {"r", r_}, {"n", n_}, {"trials", trials_}};
    m.results = j;
    return 0;
  }

  int cmd_bounds(RunManifest& m) {
    const auto grid = parse_values(r_range_);
    const auto c = bounds::curve(k_, grid, extrapolate_);
    std::ostringstream csv;
    bounds::write_curve_csv(c, csv);
    write_text(common_.out, csv.str());
    m.config = {{"k", k_}, {"r", r_range_}, {"extrapolate", extrapolate_}};
    m.results = {{"beta_k", c.beta_k},
                 {"r_validity_max", c.r_validity_max},
                 {"lower_slope", bounds::lower_slope(k_)},
                 {"upper_slope", bounds::upper_slope(k_)}};
    return 0;
  }

  int cmd_scan(RunManifest& m) {
    lab::GridSpec spec;
    spec.k = k_;
    spec.n = n_;
    spec.r_values = parse_values(r_range_);
    spec.s_values = parse_values(s_range_);
    spec.trials_per_cell = trials_;
    spec.budget = make_budget(max_conflicts_, timeout_ms_);
    spec.master_seed = common_.seed;
    spec.solver = solver_options();
    spec.exhausted_cap = exhausted_cap_;
    const auto result = lab::scan(spec, common_.workers);
    std::ostringstream csv;
    lab::write_scan_csv(result, csv);
    write_text(common_.out, csv.str());
    std::uint64_t flagged = 0;
    for (const auto& cell : result.cells) flagged += cell.tally.flagged(spec.exhausted_cap);
    m.config = lab::spec_json(spec);
    m.results = {{"cells", result.cells.size()}, {"flagged_cells", flagged}};
    return 0;
  }

  int cmd_crossing(RunManifest& m) {
    const auto spec = crossing_spec(fix_axis_ == "r" ? lab::Axis::R : lab::Axis::S, fixed_value_);
    const auto est = lab::estimate_crossing(spec, common_.workers);
    std::ostringstream csv;
    lab::write_crossings_csv(std::span(&est, 1), csv);
    write_text(common_.out, csv.str());
    m.config = lab::spec_json(spec);
    m.results = lab::estimate_json(est);
    return 0;
  }

  int cmd_slope(RunManifest& m) {
    const auto r_values = parse_values(r_range_);
    std::vector<lab::CrossingEstimate> estimates;
    std::vector<std::pair<double, double>> points;
    json per_r = json::array();
    for (double r : r_values) {
      const auto spec = crossing_spec(lab::Axis::R, r);
      estimates.push_back(lab::estimate_crossing(spec, common_.workers));
      points.emplace_back(r, estimates.back().crossing);
      per_r.push_back(lab::estimate_json(estimates.back()));
    }
    const auto fit = lab::fit_slope(k_, n_, points);
    std::ostringstream csv;
    lab::write_crossings_csv(estimates, csv);
    write_text(common_.out, csv.str());

    auto base = crossing_spec(lab::Axis::R, 0.0);
    m.config = lab::spec_json(base);
    m.config["r_values"] = r_values;
    m.results = {{"fit", lab::fit_json(fit)}, {"crossings", per_r}};
    if (k_ >= 3) m.results["theory_bracket"] = slope_bracket(k_);
    std::cerr << "slope " << format_double(fit.free_intercept.slope) << " R^2 "
              << format_double(fit.free_intercept.r_squared) << '\n';
    return 0;
  }

  int cmd_pairwise(RunManifest& m) {
    const auto report = test_xor_pairwise_independence(n_, m_xor_, samples_, common_.seed);
    return emit_report(m, report_json(report), report.pass);
  }

  int cmd_residual(RunManifest& m) {
    const auto report = test_residual_sat_bound(
        n_, s_, alpha_, samples_, common_.seed,
        direction_ == "many" ? ResidualDirection::SatGivenMany : ResidualDirection::UnsatGivenFew);
    return emit_report(m, report_json(report), report.pass);
  }

  int cmd_markov(RunManifest& m) {
    const auto report = test_markov_count_bound(k_, r_, n_, epsilon_, samples_, common_.seed);
    return emit_report(m, report_json(report), report.pass);
  }

  int emit_report(RunManifest& m, const json& report, bool pass) {
    write_text(common_.out, report.dump(2) + '\n');
    m.config = report.at("inputs");
    m.results = report;
    return pass ? 0 : 1;
  }

  int replay() {
    const auto recorded = read_manifest(file_);
    auto args = recorded.args;
    if (!common_.out.empty()) {
      bool replaced = false;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if ((args[i] == "--out" || args[i] == "-o") && i + 1 < args.size()) {
          args[i + 1] = common_.out;
          replaced = true;
        } else if (args[i].rfind("--out=", 0) == 0) {
          args[i] = "--out=" + common_.out;
          replaced = true;
        }
      }
      if (!replaced) {
        args.push_back("--out");
        args.push_back(common_.out);
      }
    }
    return Cli(std::move(args)).run();
  }

  static json slope_bracket(std::uint32_t k) {
    const double lower = bounds::lower_slope(k);
    const double upper = bounds::upper_slope(k);
    return {{"lower_curve_slope", lower},
            {"upper_curve_slope", upper},
            {"lower_curve", "s = 1/2 log2 Lambda(k, r) = 1 + r * 1/2 log2(((1 - b/2)^k - 2^-k)^2 / (1 - b)^k), "
                            "b the smallest positive root of b (2 - b)^(k - 1) = 1"},
            {"upper_curve", "s = 1 + r log2(1 - 2^-k)"},
            {"beta_k", bounds::beta(k)},
            {"r_validity_max", bounds::r_validity_max(k)}};
  }

  std::vector<std::string> args_;
  CLI::App app_;
  Common common_;
  std::map<std::string, std::function<int(RunManifest&)>> handler_;

  std::uint32_t k_ = 3;
  Var n_ = 0;
  double r_ = 0.0;
  double s_ = 0.0;
  std::uint64_t trials_ = 50;
  std::string file_;
  std::string r_range_;
  std::string s_range_;
  bool extrapolate_ = false;
  bool cdcl_ = false;
  bool cross_check_ = false;
  std::uint64_t max_conflicts_ = 0;
  std::uint64_t timeout_ms_ = 0;
  double exhausted_cap_ = lab::kDefaultExhaustedCap;
  std::string fix_axis_ = "s";
  double fixed_value_ = 0.0;
  double low_ = 0.0;
  double high_ = 0.0;
  double target_ = 0.5;
  double resolution_ = 0.01;
  double confidence_ = 0.95;
  std::uint64_t m_xor_ = 0;
  std::uint64_t samples_ = 20000;
  unsigned alpha_ = 3;
  std::string direction_ = "many";
  double epsilon_ = 1.5;
};

}  // namespace

int main(int argc, char** argv) {
  try {
    return Cli(std::vector<std::string>(argv + 1, argv + argc)).run();
  } catch (const cnfxor::ParseError& e) {
    std::cerr << "cnfxor: parse error at line " << e.line() << ": " << e.reason() << '\n';
    return kExitUsage;
  } catch (const cnfxor::GuardExceeded& e) {
    std::cerr << "cnfxor: " << e.what() << '\n';
    return kExitGuard;
  } catch (const cnfxor::InvalidParams& e) {
    std::cerr << "cnfxor: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cnfxor::OutOfValidity& e) {
    std::cerr << "cnfxor: " << e.what() << " (pass --extrapolate to evaluate anyway)\n";
    return kExitUsage;
  } catch (const cnfxor::NotBracketed& e) {
    std::cerr << "cnfxor: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cnfxor::InsufficientData& e) {
    std::cerr << "cnfxor: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cnfxor: " << e.what() << '\n';
    return 1;
  }
}
