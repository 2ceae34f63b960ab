#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "emb3/complex.hpp"

using namespace emb3;

namespace {

Complex2 tetrahedron() {
  return simplicial_from_triangles({{{"a", "b", "c"}},
                                    {{"a", "b", "d"}},
                                    {{"a", "c", "d"}},
                                    {{"b", "c", "d"}}});
}

Complex2 octahedron() {
  std::vector<std::array<Id, 3>> tris;
  for (const Id& x : {"x0", "x1"})
    for (const Id& y : {"y0", "y1"})
      for (const Id& z : {"z0", "z1"}) tris.push_back({x, y, z});
  return simplicial_from_triangles(tris);
}

// Independent count: total link-graph edge count over all vertices must equal
// total trail length (each trail position is exactly one corner).
long long total_corners(const Complex2& c) {
  long long t = 0;
  for (const auto& f : c.faces) t += static_cast<long long>(f.trail.size());
  return t;
}

long long total_link_edges(const Complex2& c) {
  long long t = 0;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
    t += link_graph(c, v).g.numEdges();
  return t;
}

long long total_link_nodes(const Complex2& c) {
  long long t = 0;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
    t += link_graph(c, v).g.numNodes();
  return t;
}

}  // namespace

TEST_CASE("tetrahedron validates as a simplicial complex") {
  Complex2 c = tetrahedron();
  CHECK(c.vertices.size() == 4);
  CHECK(c.edges.size() == 6);
  CHECK(c.faces.size() == 4);
  CHECK(c.reasonable);
  CHECK(c.simplicial);
  for (int e = 0; e < 6; ++e) CHECK(c.faceDegree(e) == 2);
  for (int v = 0; v < 4; ++v) CHECK(c.vertexDegree(v) == 3);
  CHECK(c.skeletonComponents() == 1);
}

TEST_CASE("tetrahedron links are triangles") {
  Complex2 c = tetrahedron();
  for (int v = 0; v < 4; ++v) {
    LinkGraph lg = link_graph(c, v);
    CHECK(lg.g.numNodes() == 3);
    CHECK(lg.g.numEdges() == 3);
    CHECK(lg.g.isConnected());
    CHECK(lg.g.isSimple());
    for (int n = 0; n < 3; ++n) CHECK(lg.g.degree(n) == 2);
    // Back-references must point at distinct faces containing v.
    std::set<int> faces(lg.linkFace.begin(), lg.linkFace.end());
    CHECK(faces.size() == 3);
  }
}

TEST_CASE("octahedron links are 4-cycles and measures match hand counts") {
  Complex2 c = octahedron();
  CHECK(c.vertices.size() == 6);
  CHECK(c.edges.size() == 12);
  CHECK(c.faces.size() == 8);
  for (int v = 0; v < 6; ++v) {
    LinkGraph lg = link_graph(c, v);
    CHECK(lg.g.numNodes() == 4);
    CHECK(lg.g.numEdges() == 4);
    CHECK(lg.g.isConnected());
    for (int n = 0; n < 4; ++n) CHECK(lg.g.degree(n) == 2);
  }
  Measure m = measures(c);
  CHECK(m.S == 24);  // 12 edges, each in exactly 2 faces
  CHECK(m.degreeParameter == 0);
}

TEST_CASE("cone over a graph: apex link equals the graph") {
  for (auto g : {make_complete(4, "v"), make_complete(5, "v"),
                 make_complete_bipartite(3, 3)}) {
    Complex2 c = cone_over(g, "top");
    int apex = c.vertexIndex("top");
    REQUIRE(apex >= 0);
    LinkGraph lg = link_graph(c, apex);
    CHECK(lg.g.numNodes() == g.numNodes());
    CHECK(lg.g.numEdges() == g.numEdges());
    // Degree multiset must match.
    std::multiset<int> dg, dl;
    for (int n = 0; n < g.numNodes(); ++n) dg.insert(g.degree(n));
    for (int n = 0; n < lg.g.numNodes(); ++n) dl.insert(lg.g.degree(n));
    CHECK(dg == dl);
    CHECK(lg.g.isConnected() == g.isConnected());
  }
}

TEST_CASE("cone over a graph: base vertex links are stars") {
  Multigraph g = make_complete(4, "v");
  Complex2 c = cone_over(g, "top");
  int u = c.vertexIndex("v0");
  REQUIRE(u >= 0);
  LinkGraph lg = link_graph(c, u);
  // One node per incident complex edge: 3 base edges + the cone edge.
  CHECK(lg.g.numNodes() == 4);
  CHECK(lg.g.numEdges() == 3);
  // The cone-edge end is the center: it meets every corner.
  int center = -1;
  for (int n = 0; n < lg.g.numNodes(); ++n)
    if (lg.g.degree(n) == 3) center = n;
  REQUIRE(center >= 0);
  CHECK(c.edges[lg.nodeEdge[center]].id == "top*v0");
}

TEST_CASE("measures of cone over K5") {
  Complex2 c = cone_over(make_complete(5, "v"));
  Measure m = measures(c);
  // 5 cone edges of face degree 4, 10 base edges of face degree 1.
  CHECK(m.S == 30);
  CHECK(m.degreeParameter == 10);
  // Apex link degree sequence: K5 is 4-regular.
  int apex = c.vertexIndex("top");
  CHECK(m.degreeSequences[apex] == std::vector<int>{4, 4, 4, 4, 4});
}

TEST_CASE("corner count identities") {
  for (const Complex2& c :
       {tetrahedron(), octahedron(), cone_over(make_complete(5, "v")),
        cone_over(make_petersen())}) {
    CHECK(total_link_edges(c) == total_corners(c));
    long long edgeEnds = 0;
    for (const auto& e : c.edges) edgeEnds += 2;
    CHECK(total_link_nodes(c) == edgeEnds);
    Measure m = measures(c);
    CHECK(m.S == total_corners(c));  // both equal sum of face degrees
  }
}

TEST_CASE("single loop with a one-step face") {
  Complex2 raw;
  raw.addVertex("v");
  raw.addEdge("e", "v", "v");
  raw.faces.push_back(FaceC{"f", {Traversal{0, true}}});
  Diagnostics d;
  auto c = validate_complex(raw, d);
  REQUIRE(c.has_value());
  CHECK(d.ok());
  CHECK_FALSE(c->simplicial);
  LinkGraph lg = link_graph(*c, 0);
  CHECK(lg.g.numNodes() == 2);  // two ends of the loop
  CHECK(lg.g.numEdges() == 1);
  CHECK(lg.nodeOfEnd(0, 0) != lg.nodeOfEnd(0, 1));
}

TEST_CASE("validation rejects malformed input") {
  auto expectBad = [](const Complex2& raw) {
    Diagnostics d;
    auto c = validate_complex(raw, d);
    CHECK_FALSE(c.has_value());
    CHECK_FALSE(d.ok());
  };

  SUBCASE("duplicate vertex id") {
    Complex2 raw;
    raw.vertices = {"a", "a"};
    expectBad(raw);
  }
  SUBCASE("edge with dangling endpoint") {
    Complex2 raw;
    raw.addVertex("a");
    raw.edges.push_back(EdgeC{"e", 0, 5});
    expectBad(raw);
  }
  SUBCASE("face referencing missing edge") {
    Complex2 raw;
    raw.addVertex("a");
    raw.faces.push_back(FaceC{"f", {Traversal{3, true}}});
    expectBad(raw);
  }
  SUBCASE("empty trail") {
    Complex2 raw;
    raw.addVertex("a");
    raw.faces.push_back(FaceC{"f", {}});
    expectBad(raw);
  }
  SUBCASE("open trail") {
    Complex2 raw;
    raw.addVertex("a");
    raw.addVertex("b");
    raw.addVertex("c");
    raw.addEdge("ab", "a", "b");
    raw.addEdge("bc", "b", "c");
    raw.faces.push_back(FaceC{"f", {Traversal{0, true}, Traversal{1, true}}});
    expectBad(raw);  // trail ends at c, starts at a
  }
  SUBCASE("edge repeated within a trail") {
    Complex2 raw;
    raw.addVertex("a");
    raw.addVertex("b");
    raw.addEdge("ab", "a", "b");
    raw.faces.push_back(FaceC{"f", {Traversal{0, true}, Traversal{0, false}}});
    expectBad(raw);
  }
}

TEST_CASE("canonical form is insensitive to input order") {
  Complex2 a = tetrahedron();
  // Rebuild with faces listed in a different order.
  Complex2 raw;
  for (const auto& v : a.vertices) raw.addVertex(v);
  for (const auto& e : a.edges) raw.edges.push_back(e);
  raw.faces = a.faces;
  std::reverse(raw.faces.begin(), raw.faces.end());
  Diagnostics d;
  auto b = validate_complex(raw, d);
  REQUIRE(b.has_value());
  REQUIRE(b->faces.size() == a.faces.size());
  for (size_t i = 0; i < a.faces.size(); ++i) {
    CHECK(a.faces[i].id == b->faces[i].id);
    CHECK(a.faces[i].trail.size() == b->faces[i].trail.size());
  }
}

TEST_CASE("faces given as longer vertex cycles") {
  // A square pyramid with a quadrilateral bottom face.
  Complex2 c = complex_from_vertex_faces(
      {{"a", "b", "t"}, {"b", "c", "t"}, {"c", "d", "t"}, {"d", "a", "t"},
       {"a", "b", "c", "d"}});
  CHECK(c.vertices.size() == 5);
  CHECK(c.edges.size() == 8);
  CHECK(c.faces.size() == 5);
  CHECK(c.reasonable);
  CHECK_FALSE(c.simplicial);
  for (int e = 0; e < 8; ++e) CHECK(c.faceDegree(e) == 2);
  Measure m = measures(c);
  CHECK(m.S == 16);
  CHECK(m.degreeParameter == 0);
}
