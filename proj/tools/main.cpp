#include <iostream>
#include <string>
#include <vector>

#include "mmlogic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return mmlogic::run_cli(args, std::cout, std::cerr);
}
