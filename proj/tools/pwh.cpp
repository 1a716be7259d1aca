#include <iostream>

#include "pwh/cli.hpp"

int main(int argc, char** argv) { return pwh::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
