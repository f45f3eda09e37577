#include <iostream>
#include <string>
#include <vector>

#include "bayes_bounds/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bayes_bounds::cli::run_cli(args, std::cout, std::cerr);
}
