#include <iostream>

#include "revcheck/cli.hpp"

int main(int argc, char** argv) {
    return revcheck::cli::run(argc, argv, std::cout, std::cerr);
}
