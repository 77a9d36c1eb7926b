#include <iostream>

#include "kuostab/cli.hpp"

int main(int argc, char** argv) { return kuostab::cli::main_entry(argc, argv, std::cout, std::cerr); }
