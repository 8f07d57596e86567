#include <iostream>

#include "joinwidth/cli.hpp"

int main(int argc, char** argv) { return jw::run_cli(argc, argv, std::cout, std::cerr); }
