#include <iostream>

#include "mk3/cli.hpp"

int main(int argc, char** argv) {
  return mk3::mk3_main(argc, argv, std::cout, std::cerr);
}
