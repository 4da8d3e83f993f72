#include "chi2/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return chi2::cli::run(argc, argv, std::cout, std::cerr); }
