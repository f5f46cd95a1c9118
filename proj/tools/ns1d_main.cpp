#include <string>
#include <vector>

#include "ns1d/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ns1d::dispatch(std::move(args));
}
