#include <iostream>
#include <string>
#include <vector>

#include "costsem/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return costsem::cli::run(args, std::cout, std::cerr);
}
