#include <iostream>
#include <string>
#include <vector>

#include "convopoly/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return convopoly::run_cli(args, std::cout, std::cerr);
}
