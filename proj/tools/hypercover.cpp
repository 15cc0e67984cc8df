#include <iostream>

#include "hypercover/cli.hpp"

int main(int argc, char** argv) { return hypercover::cli::run(argc, argv, std::cout, std::cerr); }
