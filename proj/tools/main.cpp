#include "rwrc/cli.hpp"

int main(int argc, char** argv) { return rwrc::run_cli(argc, argv); }
