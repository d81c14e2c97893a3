#include <iostream>

#include "regsum/cli/app.hpp"

int main(int argc, char** argv) { return regsum::cli::run(argc, argv, std::cout, std::cerr); }
