#include "qmds/cli.hpp"

int main(int argc, char** argv) {
    return qmds::cli::run(argc, argv);
}
