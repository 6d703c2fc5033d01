#include "unram/cli/job.hpp"

#include <iostream>

int main(int argc, char** argv) { return unram::cli::runCommandLine(argc, argv, std::cout, std::cerr); }
