#include <iostream>

#include "mosp/cli.hpp"

int main(int argc, char** argv) { return mosp::cli::run(argc, argv, std::cout, std::cerr); }
