#include "cli.hpp"

int main(int argc, char** argv) { return drpkit::cli::run(argc, argv); }
