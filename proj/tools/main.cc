#include "jacquet/cli.hpp"

int main(int argc, char** argv) { return jacquet::run(argc, argv); }
