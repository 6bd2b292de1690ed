#include "dtc/io/cli.hpp"

int main(int argc, char** argv) { return dtc::io::cli_main(argc, argv); }
