// Command-line front end for the generalized decompositions and recipes.
#include <string>
#include <vector>

#include "gendecomp/cli/run.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return gendecomp::cli::run(args);
}
