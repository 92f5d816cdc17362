#include <iostream>

#include "harmonic_cli/run.hpp"

int main(int argc, char** argv) { return harmonic::cli::run_cli(argc, argv, std::cout, std::cerr); }
