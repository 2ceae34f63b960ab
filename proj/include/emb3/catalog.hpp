#pragma once
// Named generator catalog: sphere triangulations, cones, the octahedron
// family, Moebius and torus-crossing obstructions, combined cones, and small
// parametric families used by tests and the CLI ("gen:" inputs).

#include <optional>
#include <string>
#include <vector>

#include "emb3/complex.hpp"

namespace emb3 {

struct CatalogEntry {
  std::string name;
  std::string description;
  bool simplicial = true;
  // Expected properties; tests re-verify rather than trust these.
  std::optional<bool> prsExists;
  std::string obstructionFamily;  // empty when prsExists != false
};

// Fixed-name entries (parametric families list one representative).
std::vector<CatalogEntry> catalog_entries();

// Builds a catalog complex by name, e.g. "tetrahedron", "cone-K5",
// "octahedron-obstruction-2", "moebius-min-555", "torus-crossing-1-2",
// "combined-cone-3", "bipyramid-12", "delta-plus-4".
// Throws std::invalid_argument for unknown names.
Complex2 gen(const std::string& name);

}  // namespace emb3
