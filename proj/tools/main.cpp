#include "otslab/cli.hpp"

int main(int argc, char** argv) {
    return otslab::cli_main({argv + 1, argv + argc});
}
