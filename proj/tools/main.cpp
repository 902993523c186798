// Entry point for the projatlas command-line tool.
#include <iostream>

#include "projatlas/cli.hpp"

int main(int argc, char** argv) {
  return projatlas::run_cli(argc, argv, std::cout, std::cerr);
}
