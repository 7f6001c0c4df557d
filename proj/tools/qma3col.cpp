#include <iostream>
#include <string>
#include <vector>

#include "qma3col/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qma3col::run_cli(args, std::cout, std::cerr);
}
