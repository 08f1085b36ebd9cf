#include "stratobs/cli.hpp"

int main(int argc, char** argv) { return stratobs::cli::main_entry(argc, argv); }
