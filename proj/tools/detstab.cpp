#include <iostream>

#include "detstab/cli.hpp"

int main(int argc, char** argv) { return detstab::run_cli(argc, argv, std::cout, std::cerr); }
