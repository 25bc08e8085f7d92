#include <iostream>

#include "kbg/cli/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kbg::cli::dispatch(args, std::cout, std::cerr);
}
