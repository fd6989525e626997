#include <iostream>

#include "friablelab/cli.hpp"

int main(int argc, char** argv) {
  return friablelab::cli::main_entry(argc, argv, std::cout, std::cerr);
}
