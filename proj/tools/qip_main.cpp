#include "qip/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qip::run_cli(argc, argv, std::cout, std::cerr); }
