#include <iostream>

#include "kbw/cli.hpp"

int main(int argc, char** argv) { return kbw::cli::run(argc, argv, std::cout, std::cerr); }
