#include <iostream>

#include "qgl_cli/cli.hpp"

int main(int argc, char** argv) { return qgl::cli::run(argc, argv, std::cout, std::cerr); }
