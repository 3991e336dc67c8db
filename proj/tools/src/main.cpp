#include <iostream>

#include "ndp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ndp::run_cli(args, std::cout, std::cerr);
}
