#include <critval/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return critval::cli::main_entry(argc, argv, std::cout, std::cerr); }
