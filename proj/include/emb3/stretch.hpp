#pragma once
// Stretching pipeline: the five existence-preserving local surgeries, a
// best-effort normalization loop towards locally almost 3-connected form,
// para-cycle detection with torus-crossing certificates, helicopter graph
// planarity, and the general decision procedure built on top of the locally
// 3-connected core.

#include <optional>
#include <string>
#include <vector>

#include "emb3/complex.hpp"
#include "emb3/decide.hpp"
#include "emb3/graph.hpp"
#include "emb3/rotation.hpp"

namespace emb3 {

// One stretching operation. Every operation preserves existence of a planar
// rotation system; apply_stretch checks the stated precondition and throws
// std::invalid_argument when it fails.
struct StretchOp {
  enum class Kind {
    StretchBranch,        // vertex v, cutEdge (cut node of L(v)), branchEdge in B
    Stretch2Sep,          // vertex v, cutEdge/branchEdge = the two separator nodes
    StretchEdge,          // edge e, faces face1, face2 kept together
    ContractReversible,   // edge e
    SplitVertex,          // vertex v with disconnected link
  };
  Kind kind = Kind::SplitVertex;
  Id vertex;
  Id cutEdge;     // StretchBranch: cut node; Stretch2Sep: first separator node
  Id branchEdge;  // StretchBranch: node inside the branch; Stretch2Sep: second node
  Id edge;        // StretchEdge / ContractReversible
  Id face1, face2;
};

// Splits off the branch B of L(v) at the cut node given by cutEdge's end at
// v; B is the component of L(v) - cutEdge containing branchEdge's end, plus
// the cut node. The edges of B - cut move to a new vertex joined to v by a
// new edge, and every face corner crossing from the cut node into B is
// rerouted through that edge (faces grow by one traversal).
Complex2 stretch_branch(const Complex2& c, const Id& v, const Id& cutEdge,
                        const Id& branchEdge);

// Stretches a 2-separator {a, b} of the 2-connected link L(v) (nodes given
// by the edges' ends at v). The vertex v splits into one vertex per
// component of L(v) - a - b, the edges a and b are replaced by a book of
// triangles over a new spine edge joining their far endpoints, and face
// corners at v are rerouted through the page of their component.
Complex2 stretch_2_separator(const Complex2& c, const Id& v, const Id& aEdge,
                             const Id& bEdge);

// Splits edge e into two parallel copies: e keeps exactly the traversals of
// faces f1 and f2, a new copy carries the rest, and a new face of size two
// closes the split. Precondition: e has face degree >= 3 and at one of its
// endvertices the corners of f1 and f2 are adjacent in the rotator at e in
// every planar rotation of the link (checked via the unique embedding when
// the link is 3-connected, by enumeration otherwise).
Complex2 stretch_edge(const Complex2& c, const Id& e, const Id& f1, const Id& f2);

// Contracts a reversible edge: both endpoint links must be para-stars
// centred at e with e of maximum degree (a single parallel graph counts),
// or e has face degree <= 2 with both endpoint links free.
Complex2 contract_reversible(const Complex2& c, const Id& e);

Complex2 apply_stretch(const Complex2& c, const StretchOp& op);

// Enumerates stretching operations whose preconditions hold on c, capped.
// StretchEdge candidates are limited to links where the adjacency condition
// is decidable at small scale.
std::vector<StretchOp> applicable_stretch_ops(const Complex2& c, std::size_t cap = 64);

// Best-effort normalization: repeatedly splits vertices with disconnected
// links and stretches cut vertices and proper 2-separators of links that are
// not yet subdivisions of 3-connected graphs, parallel graphs, or free
// graphs. Stops early when a link is non-planar or the step cap is hit.
struct NormalizeResult {
  Complex2 complex;
  std::vector<StretchOp> script;
  std::optional<Id> nonPlanarLink;  // vertex of the stretched complex
  bool complete = false;            // every link reached a target class
  long long steps = 0;
};
NormalizeResult normalize(const Complex2& c, long long maxSteps = 200);

// Graph with two marked vertices and three pairs of edges (a_i at v, b_i at
// w); planar iff some planar rotation induces inverse cyclic orders on
// (a_1,a_2,a_3) at v and (b_1,b_2,b_3) at w. Throws std::invalid_argument
// when g is not planar.
struct HelicopterGraph {
  Multigraph g;
  int v = -1, w = -1;
  std::array<std::pair<int, int>, 3> pairs;  // (edge at v, edge at w)
};
bool helicopter_planar(const HelicopterGraph& h);

// A cycle all of whose vertex links are parallel graphs with the cycle edges
// as branch nodes, every cycle edge of face degree >= 3.
struct ParaCycle {
  std::vector<int> vertices;  // in cycle order
  std::vector<int> edges;     // edges[i] joins vertices[i], vertices[i+1]
};
std::optional<ParaCycle> find_para_cycle(const Complex2& c);

// Partition of the faces into classes connected via edges NOT on the given
// cycle, with each class's winding number: how often it traverses a fixed
// cycle edge.
struct MegaFaces {
  std::vector<std::vector<int>> classes;  // face indices
  std::vector<int> windings;
};
MegaFaces mega_faces(const Complex2& c, const ParaCycle& o);

// Exhaustive search for a planar rotation system, pruned by checking link
// planarity as soon as all rotators around a vertex are fixed. Returns
// nullopt when the search tree exceeds nodeCap.
std::optional<bool> search_planar_rotation_system(const Complex2& c,
                                                  long long nodeCap,
                                                  RotationSystem* out = nullptr);

// General decision procedure: tries the locally 3-connected core, then
// normalizes and retries, then looks for a torus-crossing certificate on a
// para-cycle, and finally falls back to the pruned exhaustive search.
Verdict decide_general(const Complex2& c, const DecideOptions& opt = {});

// Routes to decide_locally_3_connected and on Inapplicable to decide_general.
Verdict decide(const Complex2& c, const DecideOptions& opt = {});

}  // namespace emb3
