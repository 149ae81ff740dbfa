#include <iostream>

#include "conedec/cli.hpp"

int main(int argc, char** argv) { return conedec::run_cli(argc, argv, std::cout, std::cerr); }
