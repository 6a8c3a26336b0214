#include "ndncec/cli.hpp"

int main(int argc, char** argv) { return ndncec::run_cli(argc, argv); }
