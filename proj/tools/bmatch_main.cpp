#include <iostream>

#include "bmatch/cli.hpp"

int main(int argc, char** argv) {
  return bmatch::run_cli(argc, argv, std::cout, std::cerr);
}
