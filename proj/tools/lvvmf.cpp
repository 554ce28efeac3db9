#include "lvvmf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lvvmf::cli::run(argc, argv, std::cout, std::cerr); }
