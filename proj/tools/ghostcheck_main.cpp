#include <iostream>

#include "ghostcheck/cli.hpp"

int main(int argc, char** argv) { return ghostcheck::run_cli(argc, argv, std::cout, std::cerr); }
