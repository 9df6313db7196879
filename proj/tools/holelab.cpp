#include <iostream>

#include "holelab/cli.hpp"

int main(int argc, char** argv) { return holelab::cli::run(argc, argv, std::cout, std::cerr); }
