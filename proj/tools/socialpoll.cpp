#include <iostream>
#include <string>
#include <vector>

#include "socialpoll/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return socialpoll::cli::run(std::move(args), std::cout, std::cerr);
}
