#include <iostream>

#include "naqm/cli.hpp"

int main(int argc, char** argv) {
  return naqm::cli::run(argc, argv, std::cout, std::cerr);
}
