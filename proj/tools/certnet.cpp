#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "certnet/cli.hpp"

int main(int argc, char** argv) {
  try {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const certnet::CommandResult result = certnet::run_command(args);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "certnet: " << e.what() << "\n";
    return 1;
  }
}
