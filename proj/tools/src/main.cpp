#include <iostream>

#include "spinnet/cli.hpp"

int main(int argc, char** argv) {
  return spinnet::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
