#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include <unistd.h>

#include "cnfxor/dimacs.hpp"
#include "cnfxor/error.hpp"
#include "cnfxor/rng.hpp"
#include "cnfxor/solver.hpp"

namespace cnfxor {

namespace {

std::string shell_quote(const std::string& text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

}  // namespace

Verdict solve_external(const Formula& formula, const std::filesystem::path& solver) {
  namespace fs = std::filesystem;
  static std::uint64_t counter = 0;
  const auto tag = derive_seed(static_cast<std::uint64_t>(::getpid()), {++counter});
  const fs::path input = fs::temp_directory_path() / ("cnfxor-" + std::to_string(tag) + ".cnf");
  {
    std::ofstream out(input);
    if (!out) throw Error("cannot create " + input.string());
    write_dimacs_xor(formula, out);
  }
  const std::string command = shell_quote(solver.string()) + " " + shell_quote(input.string()) + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), ::pclose);
  if (!pipe) {
    fs::remove(input);
    throw Error("cannot run external solver " + solver.string());
  }
  Verdict verdict = Verdict::Exhausted;
  std::array<char, 4096> line{};
  while (std::fgets(line.data(), static_cast<int>(line.size()), pipe.get()) != nullptr) {
    const std::string text(line.data());
    if (text.rfind("s SATISFIABLE", 0) == 0)
      verdict = Verdict::Sat;
    else if (text.rfind("s UNSATISFIABLE", 0) == 0)
      verdict = Verdict::Unsat;
  }
  pipe.reset();
  std::error_code ignored;
  fs::remove(input, ignored);
  return verdict;
}

}  // namespace cnfxor
