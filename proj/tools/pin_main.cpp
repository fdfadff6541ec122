#include <string>
#include <vector>

#include "../src/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pin::cli::run(args);
}
