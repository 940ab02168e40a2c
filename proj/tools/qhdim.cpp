#include "qhdim/cli.hpp"

int main(int argc, char** argv) { return qhdim::cli_main(argc, argv); }
