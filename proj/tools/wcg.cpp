#include <iostream>

#include "cli_parse.hpp"

int main(int argc, char** argv) {
  const wcg::cli::ParseOutcome parsed = wcg::cli::parse(argc, argv, std::cout, std::cerr);
  if (parsed.exit_now) return parsed.code;
  return wcg::cli::run(parsed.spec, std::cout, std::cerr);
}
