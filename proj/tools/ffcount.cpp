#include "ffcount/cli.hpp"

int main(int argc, char** argv) { return ffcount::cli_main(argc, argv); }
