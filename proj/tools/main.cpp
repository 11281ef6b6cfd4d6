#include <iostream>

#include "fabius/cli.hpp"

int main(int argc, char** argv) { return fabius::cli::run(argc, argv, std::cout, std::cerr); }
