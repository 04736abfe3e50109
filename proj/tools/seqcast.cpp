#include <iostream>

#include "seqcast/cli_app.hpp"

int main(int argc, char** argv) { return seqcast::cli::run(argc, argv, std::cout, std::cerr); }
