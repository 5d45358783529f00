#include "gausschain/cli.hpp"

int main(int argc, char** argv) { return gausschain::run_cli(argc, argv); }
