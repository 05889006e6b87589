#include <iostream>

#include "srweyl/cli/commands.hpp"

int main(int argc, char** argv) { return srweyl::cli::run(argc, argv, std::cout, std::cerr); }
