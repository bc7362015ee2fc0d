#include "hlim/cli.hpp"

int main(int argc, char** argv) { return hlim::cli::main(argc, argv); }
