#include <iostream>
#include <string>
#include <vector>

#include "x0n/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return x0n::cli::run(args, std::cout, std::cerr);
}
