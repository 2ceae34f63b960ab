#pragma once
// Directed 2-complexes: vertices, directed edges, and faces given as closed
// trails of edge traversals, plus link graphs and counting measures.

#include <array>
#include <optional>

#include "emb3/graph.hpp"

namespace emb3 {

struct Traversal {
  int edge = -1;
  bool forward = true;
  bool operator==(const Traversal&) const = default;
};

struct EdgeC {
  Id id;
  int tail = -1;
  int head = -1;
  bool isLoop() const { return tail == head; }
};

struct FaceC {
  Id id;
  std::vector<Traversal> trail;
};

struct Complex2 {
  std::vector<Id> vertices;
  std::vector<EdgeC> edges;
  std::vector<FaceC> faces;
  bool reasonable = false;
  bool simplicial = false;

  int vertexIndex(const Id& id) const;
  int edgeIndex(const Id& id) const;
  int faceIndex(const Id& id) const;
  int addVertex(const Id& id);
  int addEdge(const Id& id, const Id& tail, const Id& head);

  // Vertex at the start/end of a traversal.
  int travTail(const Traversal& t) const { return t.forward ? edges[t.edge].tail : edges[t.edge].head; }
  int travHead(const Traversal& t) const { return t.forward ? edges[t.edge].head : edges[t.edge].tail; }

  int faceDegree(int e) const;          // number of faces whose trail uses e
  std::vector<int> facesAt(int e) const;  // face indices in face order
  int vertexDegree(int v) const;        // loops count twice
  std::vector<int> skeletonComponentOf() const;  // vertex -> component
  int skeletonComponents() const;

  void recomputeFlags();
  // Sorts cells lexicographically by id and reindexes (canonical form).
  void canonicalize();
};

struct Diagnostics {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Validates the raw description, computes flags, and canonicalizes.
std::optional<Complex2> validate_complex(const Complex2& raw, Diagnostics& diag);

// Link graph at vertex v. Nodes are edge-ends at v (two per loop), links are
// face corners at v; both carry back-references into the complex.
struct LinkGraph {
  Multigraph g;
  int vertex = -1;
  std::vector<int> nodeEdge;    // node -> complex edge index
  std::vector<int> nodeEnd;     // node -> end at v (0 tail, 1 head)
  std::vector<int> linkFace;    // graph edge -> complex face index
  std::vector<int> linkCorner;  // graph edge -> corner position in the trail
  int nodeOfEnd(int edge, int end) const;
};

LinkGraph link_graph(const Complex2& c, int v);

struct Measure {
  long long S = 0;
  long long degreeParameter = 0;
  // Per-vertex abbreviated link degree sequences (entries >= 3, descending).
  std::vector<std::vector<int>> degreeSequences;
};

Measure measures(const Complex2& c);

// Builds a complex from faces given as vertex cycles (length >= 3); edges are
// inferred as sorted vertex pairs, directed from the smaller id.
Complex2 complex_from_vertex_faces(const std::vector<std::vector<Id>>& faceCycles,
                                   const std::vector<Id>& extraVertices = {});
Complex2 simplicial_from_triangles(const std::vector<std::array<Id, 3>>& tris);

// Cone over a graph: one apex, one triangle per edge of g.
Complex2 cone_over(const Multigraph& g, const Id& apex = "top");

}  // namespace emb3
