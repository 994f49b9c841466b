#include "asep/cli.hpp"

int main(int argc, char** argv) { return asep::cli::run_main(argc, argv); }
