#include <iostream>

#include "ssdlab/cli.hpp"

int main(int argc, char** argv) { return ssdlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
