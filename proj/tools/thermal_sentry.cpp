#include <iostream>

#include "sentry/cli.hpp"

int main(int argc, char** argv) { return sentry::cli::run_cli(argc, argv, std::cout, std::cerr); }
