#include "decay/cli.hpp"

int main(int argc, char** argv) { return decay::cli::run(argc, argv); }
