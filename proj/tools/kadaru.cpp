#include <iostream>

#include "kadaru/cli.hpp"

int main(int argc, char** argv) { return kadaru::run_cli(argc, argv, std::cout, std::cerr); }
