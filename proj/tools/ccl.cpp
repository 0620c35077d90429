#include "ccl/cli.hpp"

int main(int argc, char** argv) { return ccl::run_cli(std::vector<std::string>(argv + 1, argv + argc)); }
