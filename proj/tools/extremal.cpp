#include "extremal/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return extremal::cli::run(argc, argv, std::cout, std::cerr); }
