#include <iostream>

#include <rhfs/cli.hpp>

int main(int argc, char** argv) { return rhfs::cli::run(argc, argv, std::cout, std::cerr); }
