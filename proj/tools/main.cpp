#include <pht/cli.hpp>

int main(int argc, char** argv) { return pht::cli::run(argc, argv); }
