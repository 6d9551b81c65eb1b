#include "dimsob/cli.hpp"

int main(int argc, char** argv) { return dimsob::run(argc, argv); }
