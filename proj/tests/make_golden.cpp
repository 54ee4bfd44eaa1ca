// Rewrites tests/golden from the current build. Run by hand after an
// intentional output change and review the diff.

#include <fstream>
#include <iostream>
#include <sstream>

#include "golden_cases.hpp"
#include "thompson/cli.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_golden <golden-dir>\n";
    return 1;
  }
  for (const auto& c : support::golden_cases()) {
    std::ostringstream out, err;
    int code = thompson::cli::run(c.args, out, err);
    std::ofstream f(std::string(argv[1]) + "/" + c.name + ".txt", std::ios::binary);
    f << support::golden_record(code, out.str(), err.str());
  }
  return 0;
}
