#include <string>
#include <vector>

#include "spinnet/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinnet::run_cli(args);
}
