#include "dcx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dcx::cli::run(argc, argv, std::cout, std::cerr); }
