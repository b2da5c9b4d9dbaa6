#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  dynslice::cli::Terminal term;
  term.color = isatty(STDOUT_FILENO) != 0;
  return dynslice::cli::run_cli(args, std::cout, std::cerr, term);
}
