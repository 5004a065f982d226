#include <string>
#include <vector>

#include "monowage/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return monowage::cli_main(std::move(args));
}
