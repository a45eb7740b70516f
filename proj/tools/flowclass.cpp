#include <iostream>

#include "flowclass/cli/app.hpp"

int main(int argc, char** argv) {
    return flowclass::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
