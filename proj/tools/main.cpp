#include "newtonarc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return newtonarc::cli::run_command(std::move(args), std::cin, std::cout, std::cerr);
}
