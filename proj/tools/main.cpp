#include <iostream>
#include <string>
#include <vector>

#include "cgsym/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cgsym::cli::run(std::move(args), std::cout, std::cerr);
}
