#include <iostream>

#include "socnet/cli.hpp"

int main(int argc, char** argv) { return socnet::cli::run(argc, argv, std::cout, std::cerr); }
