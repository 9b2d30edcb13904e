#include "inrs/cli.hpp"

int main(int argc, char** argv) { return inrs::run_cli(argc, argv); }
