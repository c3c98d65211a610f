#include <iostream>
#include <string>
#include <vector>

#include "refine/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return refine::cli::run(args, std::cout, std::cerr);
}
