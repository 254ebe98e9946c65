#include <iostream>

#include "airyflow_cli/cli.hpp"

int main(int argc, char** argv) { return airyflow::cli::run(argc, argv, std::cout, std::cerr); }
