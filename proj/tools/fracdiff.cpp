#include <iostream>

#include "fracdiff/commands.hpp"

int main(int argc, char** argv) {
  return fracdiff::cli_main(argc, argv, std::cout, std::cerr);
}
