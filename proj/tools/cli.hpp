#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sostar::cli {

enum class Command { Validate, Decompose, Expect, Distribution, Semiclassical, Symmetry, Oracle, Example4Leg };

struct RunConfig {
  Command command = Command::Validate;
  std::string input_path;
  std::string output_path;  // stdout when empty
  std::string csv_path;
  double tol = 1e-10;
  int j_max = 40;
  std::uint64_t seed = 0;
  int n = 3;
  int trials = 10;
};

// Exit codes: 0 success, 2 for errors with a JSON report on err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs; usage errors also exit with 2.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sostar::cli
