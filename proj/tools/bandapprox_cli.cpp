#include <iostream>
#include <string>
#include <vector>

#include "bandapprox/cli.hpp"

int main(int argc, char** argv) {
  return bandapprox::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
