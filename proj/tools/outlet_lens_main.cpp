#include <string>
#include <vector>

#include "olens/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return olens::run_cli(args);
}
