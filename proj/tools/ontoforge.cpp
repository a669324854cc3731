#include <iostream>

#include "ontoforge/cli/commands.hpp"

int main(int argc, char** argv) { return ontoforge::cli::run(argc, argv, std::cout, std::cerr); }
