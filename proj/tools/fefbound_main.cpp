#include <iostream>

#include "fefbound/cli.hpp"

int main(int argc, char** argv) { return fefbound::cli::run(argc, argv, std::cout, std::cerr); }
