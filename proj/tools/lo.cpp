#include <iostream>
#include <string>
#include <vector>

#include "lo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lo::run_cli(args, std::cout, std::cerr);
}
