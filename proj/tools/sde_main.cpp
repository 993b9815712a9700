#include <iostream>

#include "sde/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sde::cli::run(args, std::cout, std::cerr);
}
