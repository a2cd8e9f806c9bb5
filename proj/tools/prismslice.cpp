#include <iostream>

#include "prismslice/cli.hpp"

int main(int argc, char** argv) { return prismslice::run_cli(argc, argv, std::cout, std::cerr); }
