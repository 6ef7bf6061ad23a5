#include <iostream>

#include "condmon/cli/commands.hpp"

int main(int argc, char** argv) {
  return condmon::cli::run_cli(argc, argv, std::cout, std::cerr);
}
