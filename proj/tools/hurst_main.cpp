#include <hurst/cli.hpp>

int main(int argc, char** argv) { return hurst::cli_main(argc, argv); }
