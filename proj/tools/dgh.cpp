#include <iostream>

#include "dgh/cli.hpp"

int main(int argc, char** argv) { return dgh::cli::run(argc, argv, std::cout, std::cerr); }
