#include "emb3/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace emb3 {

int Complex2::vertexIndex(const Id& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return static_cast<int>(i);
  return -1;
}

int Complex2::edgeIndex(const Id& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

int Complex2::faceIndex(const Id& id) const {
  for (size_t i = 0; i < faces.size(); ++i)
    if (faces[i].id == id) return static_cast<int>(i);
  return -1;
}

int Complex2::addVertex(const Id& id) {
  int i = vertexIndex(id);
  if (i >= 0) return i;
  vertices.push_back(id);
  return static_cast<int>(vertices.size()) - 1;
}

int Complex2::addEdge(const Id& id, const Id& tail, const Id& head) {
  edges.push_back(EdgeC{id, addVertex(tail), addVertex(head)});
  return static_cast<int>(edges.size()) - 1;
}

int Complex2::faceDegree(int e) const {
  int d = 0;
  for (const auto& f : faces)
    for (const auto& t : f.trail)
      if (t.edge == e) ++d;
  return d;
}

std::vector<int> Complex2::facesAt(int e) const {
  std::vector<int> out;
  for (size_t f = 0; f < faces.size(); ++f)
    for (const auto& t : faces[f].trail)
      if (t.edge == e) {
        out.push_back(static_cast<int>(f));
        break;
      }
  return out;
}

int Complex2::vertexDegree(int v) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.tail == v) ++d;
    if (e.head == v) ++d;
  }
  return d;
}

std::vector<int> Complex2::skeletonComponentOf() const {
  std::vector<int> comp(vertices.size(), -1);
  int c = 0;
  for (size_t s = 0; s < vertices.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = c;
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        int o = -1;
        if (e.tail == n) o = e.head;
        else if (e.head == n) o = e.tail;
        if (o >= 0 && comp[o] < 0) {
          comp[o] = c;
          stack.push_back(o);
        }
      }
    }
    ++c;
  }
  return comp;
}

int Complex2::skeletonComponents() const {
  auto c = skeletonComponentOf();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

void Complex2::recomputeFlags() {
  reasonable = true;
  for (size_t v = 0; v < vertices.size(); ++v)
    if (vertexDegree(static_cast<int>(v)) == 0) reasonable = false;
  for (size_t e = 0; e < edges.size(); ++e)
    if (faceDegree(static_cast<int>(e)) == 0) reasonable = false;

  simplicial = true;
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : edges) {
    if (e.isLoop()) simplicial = false;
    auto mm = std::minmax(e.tail, e.head);
    if (!pairs.insert({mm.first, mm.second}).second) simplicial = false;
  }
  std::set<std::set<int>> faceSets;
  for (const auto& f : faces) {
    if (f.trail.size() != 3) simplicial = false;
    std::set<int> vs;
    for (const auto& t : f.trail) vs.insert(travTail(t));
    if (!faceSets.insert(vs).second) simplicial = false;
  }
}

void Complex2::canonicalize() {
  std::vector<int> vp(vertices.size());
  std::iota(vp.begin(), vp.end(), 0);
  std::sort(vp.begin(), vp.end(), [&](int a, int b) { return vertices[a] < vertices[b]; });
  std::vector<int> newV(vertices.size());
  std::vector<Id> nv(vertices.size());
  for (size_t i = 0; i < vp.size(); ++i) {
    newV[vp[i]] = static_cast<int>(i);
    nv[i] = vertices[vp[i]];
  }
  vertices = nv;
  for (auto& e : edges) {
    e.tail = newV[e.tail];
    e.head = newV[e.head];
  }
  std::vector<int> ep(edges.size());
  std::iota(ep.begin(), ep.end(), 0);
  std::sort(ep.begin(), ep.end(), [&](int a, int b) { return edges[a].id < edges[b].id; });
  std::vector<int> newE(edges.size());
  std::vector<EdgeC> ne(edges.size());
  for (size_t i = 0; i < ep.size(); ++i) {
    newE[ep[i]] = static_cast<int>(i);
    ne[i] = edges[ep[i]];
  }
  edges = ne;
  for (auto& f : faces)
    for (auto& t : f.trail) t.edge = newE[t.edge];
  std::sort(faces.begin(), faces.end(),
            [](const FaceC& a, const FaceC& b) { return a.id < b.id; });
}

std::optional<Complex2> validate_complex(const Complex2& raw, Diagnostics& diag) {
  diag.errors.clear();
  std::set<Id> seen;
  for (const auto& v : raw.vertices)
    if (v.empty() || !seen.insert(v).second) diag.errors.push_back("bad vertex id: " + v);
  seen.clear();
  for (const auto& e : raw.edges) {
    if (e.id.empty() || !seen.insert(e.id).second) diag.errors.push_back("bad edge id: " + e.id);
    if (e.tail < 0 || e.tail >= static_cast<int>(raw.vertices.size()) || e.head < 0 ||
        e.head >= static_cast<int>(raw.vertices.size()))
      diag.errors.push_back("dangling incidence id in edge " + e.id);
  }
  seen.clear();
  for (const auto& f : raw.faces) {
    if (f.id.empty() || !seen.insert(f.id).second) diag.errors.push_back("bad face id: " + f.id);
    if (f.trail.empty()) {
      diag.errors.push_back("empty trail in face " + f.id);
      continue;
    }
    std::set<int> used;
    bool danglingEdge = false;
    for (const auto& t : f.trail) {
      if (t.edge < 0 || t.edge >= static_cast<int>(raw.edges.size())) {
        diag.errors.push_back("dangling incidence id in face " + f.id);
        danglingEdge = true;
        break;
      }
      if (!used.insert(t.edge).second)
        diag.errors.push_back("repeated edge in trail of face " + f.id);
    }
    if (danglingEdge) continue;
    for (size_t i = 0; i < f.trail.size(); ++i) {
      const auto& a = f.trail[i];
      const auto& b = f.trail[(i + 1) % f.trail.size()];
      if (raw.travHead(a) != raw.travTail(b)) {
        diag.errors.push_back("open trail in face " + f.id);
        break;
      }
    }
  }
  if (!diag.ok()) return std::nullopt;
  Complex2 c = raw;
  c.canonicalize();
  c.recomputeFlags();
  return c;
}

int LinkGraph::nodeOfEnd(int edge, int end) const {
  for (size_t n = 0; n < nodeEdge.size(); ++n)
    if (nodeEdge[n] == edge && nodeEnd[n] == end) return static_cast<int>(n);
  return -1;
}

LinkGraph link_graph(const Complex2& c, int v) {
  if (v < 0 || v >= static_cast<int>(c.vertices.size()))
    throw std::invalid_argument("link_graph: unknown vertex");
  LinkGraph lg;
  lg.vertex = v;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    const auto& ed = c.edges[e];
    if (ed.isLoop() && ed.tail == v) {
      lg.g.addNode(ed.id + "|t");
      lg.nodeEdge.push_back(e);
      lg.nodeEnd.push_back(0);
      lg.g.addNode(ed.id + "|h");
      lg.nodeEdge.push_back(e);
      lg.nodeEnd.push_back(1);
    } else if (ed.tail == v) {
      lg.g.addNode(ed.id);
      lg.nodeEdge.push_back(e);
      lg.nodeEnd.push_back(0);
    } else if (ed.head == v) {
      lg.g.addNode(ed.id);
      lg.nodeEdge.push_back(e);
      lg.nodeEnd.push_back(1);
    }
  }
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
    const auto& tr = c.faces[f].trail;
    int k = static_cast<int>(tr.size());
    for (int i = 0; i < k; ++i) {
      // Corner i sits at the head of traversal i.
      if (c.travHead(tr[i]) != v) continue;
      const auto& tin = tr[i];
      const auto& tout = tr[(i + 1) % k];
      int nIn = lg.nodeOfEnd(tin.edge, tin.forward ? 1 : 0);
      int nOut = lg.nodeOfEnd(tout.edge, tout.forward ? 0 : 1);
      lg.g.addEdgeIdx(c.faces[f].id + "#" + std::to_string(i), nIn, nOut);
      lg.linkFace.push_back(f);
      lg.linkCorner.push_back(i);
    }
  }
  return lg;
}

Measure measures(const Complex2& c) {
  Measure m;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    int d = c.faceDegree(e);
    m.S += d;
    if (d >= 3) m.degreeParameter += d - 2;
  }
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    LinkGraph lg = link_graph(c, v);
    std::vector<int> seq;
    for (int n = 0; n < lg.g.numNodes(); ++n) {
      int d = lg.g.degree(n);
      if (d >= 3) seq.push_back(d);
    }
    std::sort(seq.rbegin(), seq.rend());
    m.degreeSequences.push_back(seq);
  }
  return m;
}

Complex2 complex_from_vertex_faces(const std::vector<std::vector<Id>>& faceCycles,
                                   const std::vector<Id>& extraVertices) {
  Complex2 c;
  for (const auto& v : extraVertices) c.addVertex(v);
  std::map<std::pair<Id, Id>, int> edgeOf;
  auto edge = [&](const Id& a, const Id& b) {
    auto key = std::minmax(a, b);
    auto it = edgeOf.find({key.first, key.second});
    if (it != edgeOf.end()) return it->second;
    int e = c.addEdge(key.first + "-" + key.second, key.first, key.second);
    edgeOf[{key.first, key.second}] = e;
    return e;
  };
  int fi = 0;
  for (const auto& cyc : faceCycles) {
    if (cyc.size() < 3) throw std::invalid_argument("face cycle too short");
    FaceC f;
    f.id = "f" + std::to_string(fi++);
    for (size_t i = 0; i < cyc.size(); ++i) {
      const Id& a = cyc[i];
      const Id& b = cyc[(i + 1) % cyc.size()];
      int e = edge(a, b);
      f.trail.push_back(Traversal{e, c.vertices[c.edges[e].tail] == a});
    }
    c.faces.push_back(f);
  }
  Diagnostics d;
  auto out = validate_complex(c, d);
  if (!out) throw std::logic_error("complex_from_vertex_faces built invalid complex: " +
                                   (d.errors.empty() ? "" : d.errors[0]));
  return *out;
}

Complex2 simplicial_from_triangles(const std::vector<std::array<Id, 3>>& tris) {
  std::vector<std::vector<Id>> cycles;
  for (const auto& t : tris) cycles.push_back({t[0], t[1], t[2]});
  return complex_from_vertex_faces(cycles);
}

Complex2 cone_over(const Multigraph& g, const Id& apex) {
  // Faces follow the graph's edges; vertex ids are reused as complex ids.
  Complex2 c;
  c.addVertex(apex);
  for (const auto& n : g.nodes) c.addVertex(n);
  std::map<Id, int> coneEdge;
  for (const auto& n : g.nodes) coneEdge[n] = c.addEdge(apex + "*" + n, apex, n);
  int fi = 0;
  for (const auto& e : g.edges) {
    int be = c.addEdge(e.id, g.nodes[e.u], g.nodes[e.v]);
    FaceC f;
    f.id = "f" + std::to_string(fi++) + ":" + e.id;
    // apex -> u -> v -> apex
    f.trail.push_back(Traversal{coneEdge[g.nodes[e.u]], true});
    f.trail.push_back(Traversal{be, true});
    f.trail.push_back(Traversal{coneEdge[g.nodes[e.v]], false});
    c.faces.push_back(f);
  }
  Diagnostics d;
  auto out = validate_complex(c, d);
  if (!out) throw std::logic_error("cone_over built invalid complex");
  return *out;
}

}  // namespace emb3
