#include "cli/app.hpp"

int main(int argc, char** argv) { return ionspin::cli::run(argc, argv); }
