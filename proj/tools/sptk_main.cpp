#include "sptk/cli.hpp"

int main(int argc, char** argv) { return sptk::cli::run(argc, argv); }
