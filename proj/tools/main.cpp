#include "scottish_lab/cli.hpp"

int main(int argc, char** argv) { return scottish_lab::cli::run(argc, argv); }
