#include <iostream>

#include "worldsys/cli.hpp"

int main(int argc, char** argv) { return worldsys::run_cli(argc, argv, std::cout, std::cerr); }
