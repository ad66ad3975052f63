#include "carpool/cli.h"

int main(int argc, char** argv) { return carpool::cli::main_entry(argc, argv); }
