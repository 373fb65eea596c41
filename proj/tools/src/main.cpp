#include <iostream>

#include "wavetrap_cli/app.hpp"

int main(int argc, char** argv) {
    return wavetrap::cli::main_entry(argc, argv, std::cout, std::cerr);
}
