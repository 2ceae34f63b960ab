#pragma once
// Planarity with rotation-system extraction and Kuratowski witnesses.

#include <optional>

#include "emb3/graph.hpp"

namespace emb3 {

// A planar rotation of g (traced Euler characteristic 2 per component), or
// absent iff g is non-planar. Deterministic for a fixed input ordering.
std::optional<GraphRotation> planar_rotation_of_graph(const Multigraph& g);

struct KuratowskiWitness {
  std::string kind;             // "K5" or "K33"
  std::vector<int> edges;       // edge indices in g forming the subdivision
  std::vector<int> branchVertices;  // node indices of the kernel branch vertices
};

// Precondition: g non-planar.
KuratowskiWitness kuratowski_witness(const Multigraph& g);

}  // namespace emb3
