#include "bandgf/cli.hpp"

int main(int argc, char** argv) { return bandgf::cli::run(argc, argv); }
