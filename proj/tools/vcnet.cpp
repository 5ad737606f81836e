#include "vcnet/cli.hpp"

int main(int argc, char** argv) { return vcnet::cli::dispatch(argc, argv); }
