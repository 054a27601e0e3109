#include <iostream>

#include "infoid/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return infoid::cli::run(args, std::cout, std::cerr);
}
