#include <string>
#include <vector>

#include "tscalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tscalc::cli::run(args);
}
