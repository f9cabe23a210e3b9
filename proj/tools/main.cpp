#include "rtprof/cli.hpp"

int main(int argc, char** argv) { return rtprof::cli::run(argc, argv); }
