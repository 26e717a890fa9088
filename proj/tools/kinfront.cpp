#include "kinfront/experiments/commands.hpp"

int main(int argc, char** argv) { return kinfront::experiments::cli_main(argc, argv); }
