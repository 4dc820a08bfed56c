#include "mapgeo/cli.hpp"

int main(int argc, char** argv) { return mapgeo::cli::run(argc, argv); }
