#include "ncdirac/cli.hpp"

int main(int argc, char** argv) { return ncdirac::run_cli(argc, argv); }
