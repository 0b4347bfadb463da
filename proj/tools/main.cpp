#include <iostream>
#include <string>
#include <vector>

#include "nucdim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nucdim::run(args, std::cout, std::cerr);
}
