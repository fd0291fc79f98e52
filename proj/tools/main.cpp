#include "commands.hpp"

int main(int argc, char** argv) { return subgrad::cli::run_main(argc, argv); }
