#include <iostream>
#include <string>
#include <vector>

#include "corec/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return corec::cli::main_entry(args, std::cout, std::cerr);
}
