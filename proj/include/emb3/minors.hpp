#pragma once
// Space-minor operations on 2-complexes and replayable operation scripts.
//
// The five operations: contracting a non-loop edge, deleting a face (with
// cleanup of cells left incident to nothing), contracting a face of size one
// or two, splitting a vertex into one copy per link component, and
// topologically deleting an edge (one private copy per incident face).
// Deleting an isolated vertex is exposed as its own operation.

#include <optional>

#include <json.hpp>

#include "emb3/complex.hpp"

namespace emb3 {

struct MinorOp {
  enum class Kind {
    ContractEdge,
    DeleteFace,
    ContractFace,
    SplitVertex,
    TopoDeleteEdge,
    DeleteIsolatedVertex,
  };
  Kind kind = Kind::DeleteFace;
  Id cell;  // edge / face / vertex id, per kind
  bool operator==(const MinorOp&) const = default;
};

struct MinorScript {
  std::vector<MinorOp> ops;
};

// Measure values before/after each op: S[i] is the measure before op i,
// S.back() the final value.
struct ScriptTrace {
  std::vector<long long> S;
};

// Contracts a non-loop edge; the merged vertex keeps the lexicographically
// smaller endpoint id. Throws std::invalid_argument on loops/missing ids.
Complex2 contract_edge(const Complex2& c, const Id& e);

// Deletes a face; with cleanup, also removes edges left in no face and
// vertices left incident to nothing that lay on the face's trail.
Complex2 delete_face(const Complex2& c, const Id& f, bool cleanup = true);

// Contracts a face of size one (removing its loop edge from all trails) or
// size two (identifying its two non-loop edges). Adjacent opposite
// traversals created by the identification are omitted; emptied faces are
// deleted.
Complex2 contract_face(const Complex2& c, const Id& f);

// One vertex copy per component of the link graph (identity when connected;
// removes the vertex when isolated). Copies are named "<v>.0", "<v>.1", ...
// in order of each component's smallest incident edge id.
Complex2 split_vertex(const Complex2& c, const Id& v);

// One private copy "<e>.<i>" of the edge per incident face, in face order;
// a face-degree-0 edge disappears.
Complex2 topo_delete_edge(const Complex2& c, const Id& e);

Complex2 delete_isolated_vertex(const Complex2& c, const Id& v);

// Replays a script, recording the measure trace; throws std::invalid_argument
// mentioning the failing step index on error.
Complex2 apply_script(const Complex2& c, const MinorScript& script,
                      ScriptTrace* trace = nullptr);

nlohmann::json script_to_json(const MinorScript& s);
std::optional<MinorScript> script_from_json(const nlohmann::json& j, Diagnostics& diag);

}  // namespace emb3
