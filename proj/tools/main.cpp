#include "sdcm/cli.hpp"

int main(int argc, char** argv) { return sdcm::cli_main(argc, argv); }
