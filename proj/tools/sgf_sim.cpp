#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "sgf/runconfig.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const sgf::RunConfig cfg = sgf::parse_config(args);
    return sgf::execute(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sgf_sim: %s\n", e.what());
    return 2;
  }
}
