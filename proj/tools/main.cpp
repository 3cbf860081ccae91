#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
  const auto o = lempert::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << o.out;
  std::cerr << o.err;
  return o.exit_code;
}
