#include <string>
#include <vector>

#include "confining/cli.hpp"

int main(int argc, char** argv) {
    return confining::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
