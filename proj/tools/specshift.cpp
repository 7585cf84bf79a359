#include <iostream>
#include <string>
#include <vector>

#include "specshift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return specshift::cli::run(args, std::cout, std::cerr);
}
