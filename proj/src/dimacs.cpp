#include "cnfxor/dimacs.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "cnfxor/error.hpp"

namespace cnfxor {

void write_dimacs_xor(const Formula& f, std::ostream& out) {
  out << "p cnf " << f.n << ' ' << (f.cnf.size() + f.xors.size()) << '\n';
  for (const auto& clause : f.cnf) {
    for (auto lit : clause.literals) out << lit.dimacs() << ' ';
    out << "0\n";
  }
  for (const auto& x : f.xors) {
    if (x.vars.empty()) {
      if (x.rhs) {
        out << "x 0\n";
      } else {
        if (f.n < 1) throw InvalidParams("cannot encode a tautological XOR without variables");
        out << "x-1 1 0\n";
      }
      continue;
    }
    out << 'x' << (x.rhs ? "" : "-") << x.vars.front();
    for (std::size_t i = 1; i < x.vars.size(); ++i) out << ' ' << x.vars[i];
    out << " 0\n";
  }
}

std::string to_dimacs_xor(const Formula& formula) {
  std::ostringstream out;
  write_dimacs_xor(formula, out);
  return out.str();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

class Parser {
 public:
  Formula run(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string_view text(raw);
      if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
      const auto first = text.find_first_not_of(" \t");
      if (first == std::string_view::npos) continue;
      text.remove_prefix(first);
      switch (text.front()) {
        case 'c':
          continue;
        case 'p':
          header(text);
          break;
        case 'x':
          require_header();
          if (!pending_.empty()) throw ParseError(line_, "XOR line inside an unterminated clause");
          xor_line(text.substr(1));
          break;
        default:
          require_header();
          clause_tokens(text);
      }
    }
    if (!header_seen_) throw ParseError(line_, "missing 'p cnf' header");
    if (!pending_.empty()) throw ParseError(line_, "last clause is not terminated by 0");
    const auto total = formula_.cnf.size() + formula_.xors.size();
    if (total != declared_)
      throw ParseError(line_, "header declares " + std::to_string(declared_) + " clauses, found " +
                                  std::to_string(total));
    return std::move(formula_);
  }

 private:
  void header(std::string_view text) {
    if (header_seen_) throw ParseError(line_, "duplicate header");
    const auto tokens = split_tokens(text);
    if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf")
      throw ParseError(line_, "malformed header, expected 'p cnf <vars> <clauses>'");
    const auto n = parse_int(tokens[2], line_);
    const auto m = parse_int(tokens[3], line_);
    if (n < 0 || m < 0 || n > 0x7fffffff) throw ParseError(line_, "header counts out of range");
    formula_.n = static_cast<Var>(n);
    declared_ = static_cast<std::size_t>(m);
    header_seen_ = true;
  }

  void require_header() const {
    if (!header_seen_) throw ParseError(line_, "clause before 'p cnf' header");
  }

  Var checked_var(long long code) const {
    const long long v = code < 0 ? -code : code;
    if (v > static_cast<long long>(formula_.n))
      throw ParseError(line_, "variable " + std::to_string(v) + " exceeds declared count " +
                                  std::to_string(formula_.n));
    return static_cast<Var>(v);
  }

  void clause_tokens(std::string_view text) {
    for (auto token : split_tokens(text)) {
      const auto code = parse_int(token, line_);
      if (code == 0) {
        finish_clause();
        continue;
      }
      pending_.push_back(Literal{checked_var(code), code < 0});
    }
  }

  void finish_clause() {
    KClause clause{std::move(pending_)};
    pending_.clear();
    auto vars = clause.literals;
    std::sort(vars.begin(), vars.end(), [](Literal a, Literal b) { return a.variable < b.variable; });
    for (std::size_t i = 1; i < vars.size(); ++i)
      if (vars[i].variable == vars[i - 1].variable)
        throw ParseError(line_, "variable " + std::to_string(vars[i].variable) + " repeated in clause");
    formula_.k = std::max<std::uint32_t>(formula_.k, static_cast<std::uint32_t>(clause.literals.size()));
    formula_.cnf.push_back(std::move(clause));
  }

  void xor_line(std::string_view body) {
    const auto tokens = split_tokens(body);
    if (tokens.empty() || tokens.back() != "0") throw ParseError(line_, "XOR clause must end with 0");
    XorClause clause;
    bool parity = true;
    std::vector<Var> vars;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      const auto code = parse_int(tokens[i], line_);
      if (code == 0) throw ParseError(line_, "variable index 0 inside XOR clause");
      if (code < 0) parity = !parity;
      vars.push_back(checked_var(code));
    }
    // x XOR x = 0: repeated variables cancel in pairs.
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vars.size();) {
      std::size_t j = i;
      while (j < vars.size() && vars[j] == vars[i]) ++j;
      if ((j - i) % 2 == 1) clause.vars.push_back(vars[i]);
      i = j;
    }
    clause.rhs = parity;
    formula_.xors.push_back(std::move(clause));
  }

  Formula formula_;
  std::vector<Literal> pending_;
  std::size_t declared_ = 0;
  std::size_t line_ = 0;
  bool header_seen_ = false;
};

}  // namespace

Formula parse_dimacs_xor(std::istream& in) { return Parser{}.run(in); }

Formula parse_dimacs_xor(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs_xor(in);
}

}  // namespace cnfxor
