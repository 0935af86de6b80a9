#include "bellsynth/cli.hpp"

int main(int argc, char** argv) { return bellsynth::cli_main(argc, argv); }
