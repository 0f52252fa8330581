#include <iostream>
#include <string>
#include <vector>

#include "addcount/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return addcount::run(args, std::cout, std::cerr);
}
