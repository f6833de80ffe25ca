#include "jcctl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return jcctl::cli::run(argc, argv, std::cout, std::cerr); }
