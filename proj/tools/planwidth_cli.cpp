#include <iostream>

#include "oracle.hpp"
#include "planwidth/cli.hpp"

int main(int argc, char** argv) {
    return planwidth::cli_main(argc, argv, std::cin, std::cout, std::cerr, &planwidth::oracle::register_metrics);
}
