#include <iostream>
#include <string>
#include <vector>

#include "it2fgp/host/cli.hpp"

int main(int argc, char** argv) {
  it2fgp::host::configure_logging();
  std::vector<std::string> args(argv + 1, argv + argc);
  return it2fgp::host::cli_run(args, std::cout, std::cerr, std::cin);
}
