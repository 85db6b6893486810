#include <iostream>
#include <string>
#include <vector>

#include "nesa/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nesa::cli::run(args, std::cout, std::cerr);
}
