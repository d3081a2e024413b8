#include <iostream>
#include <string>
#include <vector>

#include "periodica/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return periodica::cli::run(args, std::cout);
}
