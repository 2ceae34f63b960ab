#pragma once
// Multigraphs with string ids, rotation systems, face tracing, and the
// structural graph classes used by the link-graph machinery.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace emb3 {

using Id = std::string;

struct GraphEdge {
  Id id;
  int u = -1;
  int v = -1;
  bool isLoop() const { return u == v; }
};

// A half-edge: (edge index, end). End 0 attaches at u, end 1 at v.
// Loops contribute both halves at the same node.
struct Half {
  int e = -1;
  int end = 0;
  bool operator==(const Half&) const = default;
  auto operator<=>(const Half&) const = default;
};

struct Multigraph {
  std::vector<Id> nodes;
  std::vector<GraphEdge> edges;

  int addNode(const Id& id);
  int addEdge(const Id& id, const Id& u, const Id& v);
  int addEdgeIdx(const Id& id, int u, int v);
  int nodeIndex(const Id& id) const;  // -1 when absent
  const Id& otherEnd(const Half& h) const { return nodes[endOf(h, 1)]; }
  int endOf(const Half& h, int flip = 0) const {
    const GraphEdge& ge = edges[h.e];
    return (h.end ^ flip) == 0 ? ge.u : ge.v;
  }
  // Halves attached at node n, in edge order.
  std::vector<Half> halvesAt(int n) const;
  int degree(int n) const;  // loops count twice
  int numNodes() const { return static_cast<int>(nodes.size()); }
  int numEdges() const { return static_cast<int>(edges.size()); }
  bool isSimple() const;  // no loops, no parallel edges
  std::vector<int> componentOf() const;  // node -> component index
  int componentCount() const;
  bool isConnected() const;
  // Sorts nodes and edges lexicographically by id (canonical form).
  void canonicalize();
  Multigraph inducedByEdges(const std::vector<int>& edgeIdxs) const;
};

// Per-node cyclic orientation of incident halves.
struct GraphRotation {
  std::vector<std::vector<Half>> rot;  // indexed by node
  bool covers(const Multigraph& g) const;
  void reverseAt(int n) {
    auto& r = rot[n];
    std::vector<Half> rev(r.rbegin(), r.rend());
    r = rev;
  }
  void reverseAll() {
    for (size_t n = 0; n < rot.size(); ++n) reverseAt(static_cast<int>(n));
  }
};

// A dart is a directed edge: tail at end `end`.
struct Dart {
  int e = -1;
  int end = 0;
  bool operator==(const Dart&) const = default;
  auto operator<=>(const Dart&) const = default;
};

struct TracedSurface {
  std::vector<std::vector<Dart>> faces;
  std::vector<int> faceComponent;   // component index per traced face
  std::vector<int> componentEuler;  // V - E + F per component
  int components = 0;
  bool planar() const {
    for (int chi : componentEuler)
      if (chi != 2) return false;
    return true;
  }
  int eulerChar() const {
    int s = 0;
    for (int chi : componentEuler) s += chi;
    return s;
  }
};

TracedSurface trace_faces(const Multigraph& g, const GraphRotation& r);

// Cyclic-sequence helpers (sequences of pairwise distinct values).
bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b);
bool cyclic_reverse_equal(const std::vector<int>& a, const std::vector<int>& b);

// Connectivity in the paper's convention: a graph on 2 vertices with >= 2
// parallel edges is 2-connected; for k > 2 at least k+1 vertices are needed.
bool is_k_connected(const Multigraph& g, int k);

struct GraphClass {
  enum class Tag { Subdiv3Connected, ParallelGraph, FreeGraph, StarOfParallel, ParaStar, Other };
  Tag tag = Tag::Other;
  // Independent predicates; the tag is the highest-priority true predicate.
  bool subdiv3connected = false;
  bool parallel = false;
  bool freeGraph = false;
  bool paraStar = false;
  bool starOfParallel = false;
  // Witnesses.
  std::vector<int> branchVertices;  // parallel graph: the two branch vertices
  int paraStarCenter = -1;
  Multigraph kernel;  // suppressed 3-connected kernel when subdiv3connected
  std::vector<int> kernelOf;  // node -> kernel node (-1 for subdivision nodes)
};

GraphClass classify_graph(const Multigraph& g);

// Parallel-graph recognition with explicit branch pair output. A bare cycle
// counts with degree-2 branch vertices (smallest two node ids); a path counts
// with its endpoints.
bool is_parallel_graph(const Multigraph& g, std::pair<int, int>* branch = nullptr);
// True when `g` is a parallel graph having `n` as one of its branch vertices
// (for cycles any vertex qualifies).
bool is_parallel_with_branch(const Multigraph& g, int n);

// Vertex sum H1 (+)_v H2 along a bijection of the halves at v. psi pairs
// positions in halvesAt(v1) of H1 with positions in halvesAt(v2) of H2.
Multigraph vertex_sum(const Multigraph& h1, const Id& v1, const Multigraph& h2, const Id& v2,
                      const std::vector<std::pair<Half, Half>>& psi);

// Subdivision recognition: suppress degree-2 nodes onto branch vertices.
struct SuppressedKernel {
  Multigraph kernel;
  std::vector<int> kernelOf;                     // node -> kernel node or -1
  std::vector<std::vector<int>> kernelEdgePath;  // kernel edge -> g edge idxs along the path
  bool hasBranchlessCycle = false;               // some component is a bare cycle
};

SuppressedKernel suppress_degree_two(const Multigraph& g);

// Checks that `edgeSubset` induces a subdivision of K5 or K3,3 in g.
// Returns "K5", "K33" or "" with branch vertices of the kernel.
std::string kuratowski_kind(const Multigraph& g, const std::vector<int>& edgeSubset,
                            std::vector<int>* branchVertices = nullptr);

// All rotation systems of g (cyclic orders per node), invoking fn on each.
// Returns false if the count would exceed `cap` (nothing invoked then).
bool for_each_rotation(const Multigraph& g, std::uint64_t cap,
                       const std::function<bool(const GraphRotation&)>& fn);
// Number of rotation systems, saturating at cap.
std::uint64_t rotation_count(const Multigraph& g, std::uint64_t cap);

// Named small graphs for tests and the catalog.
Multigraph make_complete(int n, const std::string& prefix = "v");
Multigraph make_complete_bipartite(int a, int b);
Multigraph make_cycle(int n, const std::string& prefix = "v");
Multigraph make_petersen();

}  // namespace emb3
