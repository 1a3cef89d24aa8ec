#include <string>
#include <vector>

#include "nlroth/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nlroth::cli::dispatch(std::move(args));
}
