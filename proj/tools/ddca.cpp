#include "ddca/cli.hpp"

int main(int argc, char** argv) { return ddca::cli::run(argc, argv); }
