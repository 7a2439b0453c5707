#include <iostream>
#include <string>
#include <vector>

#include "pgdus/tools/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pgdus::tools::run(args, std::cout, std::cerr);
}
