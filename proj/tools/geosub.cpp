#include <iostream>

#include "geosub/cli.hpp"

int main(int argc, char** argv) {
  return geosub::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
