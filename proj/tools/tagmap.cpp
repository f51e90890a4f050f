#include <iostream>

#include "tagmap/cli.hpp"

int main(int argc, char** argv) {
  return tagmap::cli::run(argc, argv, {std::cin, std::cout, std::cerr});
}
