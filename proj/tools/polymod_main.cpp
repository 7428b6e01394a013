#include <iostream>

#include "polymod/cli.hpp"

int main(int argc, char** argv) { return polymod::run_cli(argc, argv, std::cout, std::cerr); }
