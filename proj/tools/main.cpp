#include <iostream>

#include "tauber/cli.hpp"

int main(int argc, char** argv) { return tauber::cli::run(argc, argv, std::cout, std::cerr); }
