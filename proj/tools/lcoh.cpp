#include <lcoh/cli.hpp>

int main(int argc, char **argv) { return lcoh::cli::run(argc, argv); }
