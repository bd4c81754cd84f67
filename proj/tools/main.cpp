#include <iostream>
#include <string>
#include <vector>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  using namespace su2lissajous::cli;
  const std::vector<std::string> args(argv, argv + argc);
  try {
    return run(parse_args(args), std::cout, std::cerr);
  } catch (const CliError& e) {
    std::cerr << e.message << '\n';
    return e.exit_code;
  }
}
