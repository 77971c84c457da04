#include "hcnot/cli.hpp"

int main(int argc, char** argv) { return hcnot::cli::main(argc, argv); }
