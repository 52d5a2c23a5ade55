#include "refaudit/cli.hpp"

int main(int argc, char** argv) { return refaudit::run(argc, argv); }
