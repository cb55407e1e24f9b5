#include <iostream>

#include <syzmirror/cli.hpp>

int main(int argc, char **argv)
{
    return syzmirror::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
