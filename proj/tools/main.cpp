#include <iostream>
#include <string>
#include <vector>

#include "ratrec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ratrec::cli::run(args, std::cout, std::cerr);
}
