#include "susydelta/cli.hpp"

int main(int argc, char** argv) { return susydelta::cli::run(argc, argv); }
