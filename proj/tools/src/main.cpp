#include "clausedag_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return clausedag::cli::run(argc, argv, std::cout, std::cerr);
}
