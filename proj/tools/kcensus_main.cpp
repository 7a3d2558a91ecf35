#include <iostream>
#include <string>
#include <vector>

#include "kcensus/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kcensus::dispatch(args, std::cout, std::cerr);
}
