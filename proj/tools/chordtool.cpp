#include <iostream>

#include "chord/cli.hpp"

int main(int argc, char** argv) { return chord::run_cli(argc, argv, std::cout, std::cerr); }
