#include <iostream>

#include "clustereval/commands.h"

int main(int argc, char** argv) {
  return clustereval::run_cli(argc, argv, std::cout, std::cerr);
}
