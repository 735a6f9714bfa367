#include "lcsl/cli.hpp"

int main(int argc, char** argv) {
  return lcsl::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
