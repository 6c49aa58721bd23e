#include <iostream>

#include "banditsweeper/cli.hpp"

int main(int argc, char** argv) {
  return banditsweeper::run_cli(argc, argv, std::cout, std::cerr);
}
