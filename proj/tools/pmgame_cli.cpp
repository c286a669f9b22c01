#include "pmgame/cli.hpp"

int main(int argc, char** argv) { return pmg::cli_main(argc, argv); }
