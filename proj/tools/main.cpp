#include "hyperdecay/cli.hpp"

int main(int argc, char** argv) { return hyperdecay::cli::run(argc, argv); }
