#include <iostream>
#include <string>
#include <vector>

#include "spider/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return spider::run_cli(args, std::cout, std::cerr);
}
