#include "cli.hpp"

int main(int argc, char** argv) { return npsense::cli::cli_main(argc, argv); }
