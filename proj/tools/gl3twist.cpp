#include "gl3/cli.hpp"

int main(int argc, char** argv) { return gl3::cli::main(argc, argv); }
