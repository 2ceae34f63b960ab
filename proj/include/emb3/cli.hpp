#pragma once
// Command-line front end. Subcommands: validate | links | decide | obstruct |
// homology | local-surfaces | minor | gen. Inputs are JSON files or catalog
// names with the "gen:" prefix. Reports are deterministic JSON embedding the
// tool version and a content hash of the input complex.

#include <iosfwd>
#include <string>
#include <vector>

namespace emb3 {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success / planar rotation system found; 1 no planar rotation
// system; 2 hypothesis violation (invalid input, undecided); 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli_main(int argc, char** argv);

}  // namespace emb3
