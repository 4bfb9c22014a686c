#include "canodual/cli.hpp"

int main(int argc, char** argv) { return canodual::cli::run(argc, argv); }
