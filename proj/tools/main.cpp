#include <iostream>

#include "divfano/cli.hpp"

int main(int argc, char **argv)
{
    return divfano::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
