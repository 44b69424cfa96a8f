#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  nash::cli::install_interrupt_handler();
  return nash::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
