#include <iostream>

#include "nclmp/cli.hpp"

int main(int argc, char** argv) { return nclmp::cli_main(argc, argv, std::cout, std::cerr); }
