#include "cli.hpp"

int main(int argc, char** argv) { return roundpack::cli::run_cli(argc, argv); }
