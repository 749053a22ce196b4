#include <iostream>
#include <string>
#include <vector>

#include "fjerk/cli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return fjerk::cli::run_command(args, std::cout, std::cerr);
}
