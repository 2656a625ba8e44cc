#include <iostream>
#include <string>
#include <vector>

#include "extremes/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return extremes::cli::run_command(args, std::cout, std::cerr);
}
