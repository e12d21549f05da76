#include <iostream>
#include <string>
#include <vector>

#include "bb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bb::cli::run(args, std::cout, std::cerr);
}
