// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "fasvbcm/cli.hpp"

int main(int argc, char** argv)
{
    return fas::cli::run(argc, argv, std::cout, std::cerr);
}
