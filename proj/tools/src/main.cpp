#include <iostream>

#include "foldfem/cli.hpp"

int main(int argc, char** argv) { return foldfem::cli::run(argc, argv, std::cout, std::cerr); }
