#include <iostream>

#include "geocast/cli.hpp"

int main(int argc, char** argv) { return geocast::run_cli(argc, argv, std::cout, std::cerr); }
