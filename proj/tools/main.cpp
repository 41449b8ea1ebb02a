#include "transnli/cli.hpp"

int main(int argc, char** argv) {
    return transnli::cli::run(argc, argv);
}
