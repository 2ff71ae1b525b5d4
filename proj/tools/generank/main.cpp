#include "cli.hpp"

int main(int argc, char **argv) { return generank::cli::run(argc, argv); }
