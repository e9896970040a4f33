#include "cli.hpp"

int main(int argc, char** argv) { return arith::cli::dispatch(argc, argv); }
