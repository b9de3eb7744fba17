#include <iostream>

#include "qd1/cli.hpp"

int main(int argc, char** argv) {
    return qd1::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
