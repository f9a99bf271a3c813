#include <iostream>

#include "lexcausal/tools/cli.hpp"

int main(int argc, char** argv) { return lexcausal::tools::run_cli(argc, argv, std::cout, std::cerr); }
