#include <string>
#include <vector>

#include "peridyn/experiments.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return peridyn::cli_main(args);
}
