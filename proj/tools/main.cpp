#include <iostream>

#include "curvebill/cli.hpp"

int main(int argc, char** argv)
{
    return curvebill::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
