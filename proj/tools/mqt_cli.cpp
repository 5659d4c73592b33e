#include <iostream>
#include <string>
#include <vector>

#include "mqt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto res = mqt::cli::run(args);
  if (res.json_output && res.payload) {
    std::cout << res.payload->dump(2) << '\n';
  } else {
    (res.exit_code == 2 ? std::cerr : std::cout) << res.text;
  }
  return res.exit_code;
}
