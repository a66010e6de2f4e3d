#include <iostream>

#include "pqpierce/cli.hpp"

int main(int argc, char** argv) { return pqpierce::run_cli(argc, argv, std::cout, std::cerr); }
