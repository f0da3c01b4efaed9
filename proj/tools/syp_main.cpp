#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "syp/cli.hpp"

int main(int argc, char** argv) {
  syp::cli::Terminal terminal;
  terminal.color = ::isatty(STDOUT_FILENO) && std::getenv("SYP_NO_COLOR") == nullptr;
  std::vector<std::string> args(argv + 1, argv + argc);
  return syp::cli::run(args, std::cin, std::cout, std::cerr, terminal);
}
