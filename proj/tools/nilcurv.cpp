#include "nilcurv/cli.hpp"

int main(int argc, char** argv) { return nilcurv::cli::run_cli(argc, argv); }
