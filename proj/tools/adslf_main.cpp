#include "adslf/cli.hpp"

int main(int argc, char** argv) { return adslf::cli_run(argc, argv); }
