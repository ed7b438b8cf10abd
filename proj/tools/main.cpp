#include "cli_app.hpp"

int main(int argc, char** argv) { return texlbp::cli::run_cli(argc, argv); }
