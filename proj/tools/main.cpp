#include <iostream>

#include "solarband/cli.hpp"

int main(int argc, char** argv) { return solarband::cli::run(argc, argv, std::cout, std::cerr); }
