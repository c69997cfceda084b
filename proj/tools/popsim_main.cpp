#include "popsim/cli.hpp"

int main(int argc, char** argv) { return popsim::cli::run_cli(argc, argv); }
