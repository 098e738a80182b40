#include <iostream>

#include "pleat/cli.hpp"

int main(int argc, char** argv) {
    return pleat::cli::dispatch(argc, argv, std::cout, std::cerr);
}
