#include "cli.hpp"

int main(int argc, char** argv) { return blockade::cli::cli_main(argc, argv); }
