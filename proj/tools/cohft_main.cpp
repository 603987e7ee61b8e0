#include <iostream>

#include "cohft/cli.hpp"

int main(int argc, char** argv) { return cohft::run_cli(argc, argv, std::cout, std::cerr); }
