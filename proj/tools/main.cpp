#include <iostream>

#include "regge/cli.hpp"

int main(int argc, char** argv) { return regge::run_cli(argc, argv, std::cout, std::cerr); }
