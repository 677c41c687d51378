#include <iostream>
#include <string>
#include <vector>

#include "kvol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kvol::run_cli(args, std::cout, std::cerr);
}
