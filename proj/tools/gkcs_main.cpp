#include <iostream>

#include "gkcs/cli.hpp"

int main(int argc, char** argv) { return gkcs::cli::run(argc, argv, std::cout, std::cerr); }
