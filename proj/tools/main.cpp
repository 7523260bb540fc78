#include "bandwave/cli.hpp"

int main(int argc, char** argv) { return bandwave::cli_dispatch(argc, argv); }
