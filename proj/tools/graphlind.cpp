#include "graphlind/experiment.hpp"

int main(int argc, char** argv) { return graphlind::cli_main(argc, argv); }
