#include "cmflow/cli_runner.hpp"

int main(int argc, char** argv) { return cmflow::run_cli(argc, argv); }
