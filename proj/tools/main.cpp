#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "credal/cli.hpp"

int main(int argc, char** argv) {
  try {
    return credal::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
