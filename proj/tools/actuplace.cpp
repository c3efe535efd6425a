#include <iostream>

#include "actuplace/cli.hpp"

int main(int argc, char** argv) {
    return actuplace::run_cli(argc, argv, std::cout, std::cerr);
}
