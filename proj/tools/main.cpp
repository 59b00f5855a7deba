#include "projreg/cli.hpp"

int main(int argc, char** argv) { return projreg::run_cli(argc, argv); }
