#include <iostream>

#include "ratla/cli.hpp"

int main(int argc, char** argv) { return ratla::cli::run(argc, argv, std::cout, std::cerr); }
