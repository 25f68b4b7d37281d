#include <iostream>

#include "g5/cli.hpp"

int main(int argc, char** argv) { return g5::cli::cli_main(argc, argv, std::cout, std::cerr); }
