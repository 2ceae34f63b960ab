#include "emb3/cli.hpp"

int main(int argc, char** argv) { return emb3::run_cli_main(argc, argv); }
