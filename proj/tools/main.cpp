#include <iostream>

#include "freezm_cli.hpp"

int main(int argc, char** argv) { return freezm::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
