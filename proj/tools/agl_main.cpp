#include <iostream>

#include "agl/cli.hpp"

int main(int argc, char** argv) { return agl::cli::run(argc, argv, std::cout, std::cerr); }
