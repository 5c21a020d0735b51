#include <iostream>

#include "singosc4/cli.hpp"

int main(int argc, char** argv) { return singosc4::run_cli(argc, argv, std::cout, std::cerr); }
