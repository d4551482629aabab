#include "cli.hpp"

int main(int argc, char** argv) { return edgemc::tools::run(argc, argv); }
