#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lempert::cli {

struct Outcome {
  int exit_code = 0;
  std::string out;  ///< one JSON document (or CSV with --csv)
  std::string err;  ///< human-readable progress, e.g. verify lines
};

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 numerical failure, 2 invalid input.
Outcome run(const std::vector<std::string>& args);

/// "RE+IMi", "RE-IMi", "RE" or "IMi". Throws DomainError.
std::complex<double> parse_complex(const std::string& text);
/// Comma-separated complex literals.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

}  // namespace lempert::cli
