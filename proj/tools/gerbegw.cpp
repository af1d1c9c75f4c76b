#include "gerbegw/cli.hpp"

int main(int argc, char** argv) { return gerbegw::cli::run(argc, argv); }
