#include <iostream>
#include <string>
#include <vector>

#include "mvsim/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mvsim::dispatch(args, std::cout, std::cerr);
}
