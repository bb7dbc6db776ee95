#include <iostream>
#include <string>
#include <vector>

#include "miniant/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return miniant::cli::run(args, std::cout, std::cerr);
}
