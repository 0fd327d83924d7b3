#include <iostream>

#include "kgqa/commands.hpp"

int main(int argc, char** argv) { return kgqa::run_cli(argc, argv, std::cout, std::cerr); }
