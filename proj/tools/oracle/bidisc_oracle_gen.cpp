// Writes the reference value of the bidisc failure case to a header.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "oracles/bidisc_grid_oracle.hpp"

using lempert::testing::C;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: bidisc_oracle_gen OUTPUT\n";
    return 2;
  }
  const double value = lempert::testing::bidisc_oracle({C(0.5, 0.0), C(0.0, 0.5)}, {C(0.5, 0.0), C(-0.5, 0.0)}, 1000, 20);
  char line[128];
  std::snprintf(line, sizeof line, "%.17g", value);
  std::ofstream out(argv[1]);
  out << "#pragma once\n\n"
      << "// Generated at build time by bidisc_oracle_gen.\n\n"
      << "namespace lempert::cli {\n\n"
      << "/// Bidisc Lempert value at (0, 0) for A = {0.5, 0.5i}, B = {0.5, -0.5}\n"
      << "/// from the Schur-recursion grid oracle.\n"
      << "inline constexpr double kBidiscOracleValue = " << line << ";\n\n"
      << "}  // namespace lempert::cli\n";
  return out ? 0 : 1;
}
