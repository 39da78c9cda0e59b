#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cmkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cmkit::cli::run_cli(args, std::cout, std::cerr, std::getenv("CMKIT_PROFILE"));
}
