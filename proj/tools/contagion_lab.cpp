#include <iostream>

#include "contagion/cli.hpp"

int main(int argc, char** argv) { return contagion::cli_dispatch(argc, argv, std::cout, std::cerr); }
