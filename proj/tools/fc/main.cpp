#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> seed;
  if (const char* s = std::getenv("FC_SEED")) seed = s;
  return fc::cli::run(args, std::cout, std::cerr, seed);
}
