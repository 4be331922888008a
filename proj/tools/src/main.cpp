#include <iostream>

#include "prosodex_cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return prosodex::cli::run(args, std::cout, std::cerr);
}
