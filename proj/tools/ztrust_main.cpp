#include <iostream>

#include "ztrust/cli.hpp"

int main(int argc, char** argv) {
  return ztrust::cli::cli_main(argc, argv, std::cout, std::cerr);
}
