#include <iostream>
#include <string>
#include <vector>

#include "docq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return docq::run(std::move(args), std::cout, std::cerr);
}
