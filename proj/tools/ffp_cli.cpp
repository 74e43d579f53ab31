#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return ffp::cli::dispatch(argc, argv, std::cout, std::cerr); }
