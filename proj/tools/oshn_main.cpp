#include "oshn/cli.hpp"

int main(int argc, char** argv) { return oshn::run_cli(argc, argv); }
