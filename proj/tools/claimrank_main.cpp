#include "claimrank/cli_app.hpp"

int main(int argc, char** argv) {
    return claimrank::run_cli(argc, argv);
}
