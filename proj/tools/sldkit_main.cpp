#include "sld/cli.hpp"

int main(int argc, char** argv) { return sld::run_cli(argc, argv); }
