#include <iostream>
#include <string>
#include <vector>

#include "transclab/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return transclab::cli::run(args, std::cout, std::cerr);
}
