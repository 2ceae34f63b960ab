#include "emb3/stretch.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "emb3/homology.hpp"
#include "emb3/minors.hpp"
#include "emb3/planarity.hpp"

namespace emb3 {

namespace {

std::string kindName(StretchOp::Kind k) {
  switch (k) {
    case StretchOp::Kind::StretchBranch: return "stretch-branch";
    case StretchOp::Kind::Stretch2Sep: return "stretch-2-separator";
    case StretchOp::Kind::StretchEdge: return "stretch-edge";
    case StretchOp::Kind::ContractReversible: return "contract-reversible";
    case StretchOp::Kind::SplitVertex: return "split-vertex";
  }
  return "?";
}

[[noreturn]] void fail(StretchOp::Kind k, const std::string& what) {
  throw std::invalid_argument(kindName(k) + ": " + what);
}

Id uniqueVertexId(const Complex2& c, const Id& base) {
  Id id = base;
  while (c.vertexIndex(id) >= 0) id += "'";
  return id;
}

Id uniqueEdgeId(const Complex2& c, const Id& base) {
  Id id = base;
  while (c.edgeIndex(id) >= 0) id += "'";
  return id;
}

Id uniqueFaceId(const Complex2& c, const Id& base) {
  Id id = base;
  while (c.faceIndex(id) >= 0) id += "'";
  return id;
}

// Node of L(v) for the end of edge e at v; e must not be a loop.
int nodeAt(const Complex2& c, const LinkGraph& lg, int e) {
  int end = c.edges[e].tail == lg.vertex ? 0 : 1;
  return lg.nodeOfEnd(e, end);
}

bool hasLoopAt(const Complex2& c, int v) {
  for (const auto& e : c.edges)
    if (e.isLoop() && e.tail == v) return true;
  return false;
}

// Component index per node of g with the listed nodes removed (-1 for them).
std::vector<int> componentsWithout(const Multigraph& g, const std::vector<int>& removed) {
  std::vector<int> comp(g.numNodes(), -2);
  for (int r : removed) comp[r] = -1;
  int next = 0;
  for (int s = 0; s < g.numNodes(); ++s) {
    if (comp[s] != -2) continue;
    comp[s] = next;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int n = q.front();
      q.pop();
      for (const Half& h : g.halvesAt(n)) {
        int m = g.endOf(h, 1);
        if (comp[m] == -2) {
          comp[m] = next;
          q.push(m);
        }
      }
    }
    ++next;
  }
  return comp;
}

int componentMax(const std::vector<int>& comp) {
  int m = -1;
  for (int x : comp) m = std::max(m, x);
  return m;
}

// The traversal adjacent to trail[pos] across the corner at vertex v.
int cornerPartnerPos(const Complex2& c, const FaceC& f, int pos, int v) {
  int k = static_cast<int>(f.trail.size());
  if (c.travHead(f.trail[pos]) == v) return (pos + 1) % k;
  if (c.travTail(f.trail[pos]) == v) return (pos - 1 + k) % k;
  return -1;
}

bool planarLink(const Multigraph& g) {
  if (g.numEdges() == 0) return true;
  return planar_rotation_of_graph(g).has_value();
}

// True when the halves h1, h2 are cyclically adjacent in r.rot[n].
bool rotatorAdjacent(const GraphRotation& r, int n, const Half& h1, const Half& h2) {
  const auto& rot = r.rot[n];
  int k = static_cast<int>(rot.size());
  if (k <= 2) return true;
  int p1 = -1, p2 = -1;
  for (int i = 0; i < k; ++i) {
    if (rot[i] == h1) p1 = i;
    if (rot[i] == h2) p2 = i;
  }
  if (p1 < 0 || p2 < 0) return false;
  int d = std::abs(p1 - p2);
  return d == 1 || d == k - 1;
}

// Decides whether h1 and h2 are adjacent in the rotator at node n in every
// planar rotation of g. Returns nullopt when undecidable within the cap.
std::optional<bool> adjacentInEveryPlanarRotation(const Multigraph& g, int n,
                                                  const Half& h1, const Half& h2) {
  GraphClass cls = classify_graph(g);
  if (cls.subdiv3connected) {
    auto r = planar_rotation_of_graph(g);
    if (!r) return false;  // no planar rotation at all
    return rotatorAdjacent(*r, n, h1, h2);
  }
  constexpr std::uint64_t kCap = 200000;
  if (rotation_count(g, kCap) >= kCap) return std::nullopt;
  bool found = false;
  bool allAdjacent = true;
  for_each_rotation(g, kCap, [&](const GraphRotation& r) {
    if (!trace_faces(g, r).planar()) return true;
    found = true;
    if (!rotatorAdjacent(r, n, h1, h2)) {
      allAdjacent = false;
      return false;
    }
    return true;
  });
  return found && allAdjacent;
}

// Components of g - n, each extended by n again, must all be parallel graphs
// with branch vertex n attached by at least two edges.
bool isParaStarAt(const Multigraph& g, int n) {
  if (g.numNodes() < 2 || !g.isConnected()) return false;
  for (const Half& h : g.halvesAt(n))
    if (g.endOf(h, 1) == n) return false;  // loop at the centre
  auto comp = componentsWithout(g, {n});
  int parts = componentMax(comp) + 1;
  if (parts == 0) return false;
  for (int p = 0; p < parts; ++p) {
    std::vector<int> edgeIdxs;
    for (int e = 0; e < g.numEdges(); ++e) {
      const auto& ge = g.edges[e];
      auto inside = [&](int x) { return x == n || comp[x] == p; };
      if (inside(ge.u) && inside(ge.v)) edgeIdxs.push_back(e);
    }
    Multigraph sub = g.inducedByEdges(edgeIdxs);
    int sn = sub.nodeIndex(g.nodes[n]);
    if (sn < 0 || sub.degree(sn) < 2) return false;
    if (!is_parallel_with_branch(sub, sn)) return false;
  }
  return true;
}

bool contractReversibleOkAt(const Complex2& c, int v, int e) {
  LinkGraph lg = link_graph(c, v);
  if (lg.g.numEdges() == 0) return false;
  int n = nodeAt(c, lg, e);
  if (c.faceDegree(e) <= 2) {
    GraphClass cls = classify_graph(lg.g);
    if (cls.freeGraph || cls.parallel) return true;
  }
  if (!isParaStarAt(lg.g, n)) return false;
  int maxDeg = 0;
  for (int m = 0; m < lg.g.numNodes(); ++m) maxDeg = std::max(maxDeg, lg.g.degree(m));
  return lg.g.degree(n) == maxDeg;
}

bool stretchEdgeOk(const Complex2& c, int e, int f1, int f2) {
  if (c.edges[e].isLoop()) return false;
  auto fs = c.facesAt(e);
  if (static_cast<int>(fs.size()) < 3) return false;
  if (f1 == f2) return false;
  if (std::find(fs.begin(), fs.end(), f1) == fs.end()) return false;
  if (std::find(fs.begin(), fs.end(), f2) == fs.end()) return false;
  for (int v : {c.edges[e].tail, c.edges[e].head}) {
    LinkGraph lg = link_graph(c, v);
    int n = nodeAt(c, lg, e);
    Half h1{-1, 0}, h2{-1, 0};
    for (const Half& h : lg.g.halvesAt(n)) {
      int f = lg.linkFace[h.e];
      if (f == f1) h1 = h;
      if (f == f2) h2 = h;
    }
    if (h1.e < 0 || h2.e < 0) continue;
    auto ok = adjacentInEveryPlanarRotation(lg.g, n, h1, h2);
    if (ok.has_value() && *ok) return true;
  }
  return false;
}

}  // namespace

Complex2 stretch_branch(const Complex2& c, const Id& v, const Id& cutEdge,
                        const Id& branchEdge) {
  constexpr auto K = StretchOp::Kind::StretchBranch;
  int vi = c.vertexIndex(v);
  if (vi < 0) fail(K, "unknown vertex " + v);
  if (hasLoopAt(c, vi)) fail(K, "loop at " + v + " unsupported");
  int cutE = c.edgeIndex(cutEdge), brE = c.edgeIndex(branchEdge);
  if (cutE < 0 || brE < 0 || cutE == brE) fail(K, "bad edge arguments");
  LinkGraph lg = link_graph(c, vi);
  if (!lg.g.isConnected()) fail(K, "link at " + v + " is disconnected");
  auto atV = [&](int e) { return c.edges[e].tail == vi || c.edges[e].head == vi; };
  if (!atV(cutE) || !atV(brE)) fail(K, "edges must be incident with " + v);
  int cutNode = nodeAt(c, lg, cutE);
  int brNode = nodeAt(c, lg, brE);
  auto comp = componentsWithout(lg.g, {cutNode});
  if (componentMax(comp) + 1 < 2) fail(K, cutEdge + " is not a cut node of the link at " + v);
  int part = comp[brNode];
  auto inB = [&](int node) { return node != cutNode && comp[node] == part; };

  Complex2 out = c;
  Id vB = uniqueVertexId(out, v + "[" + branchEdge + "]");
  int vBi = out.addVertex(vB);
  for (int n = 0; n < lg.g.numNodes(); ++n) {
    if (!inB(n)) continue;
    EdgeC& e = out.edges[lg.nodeEdge[n]];
    (lg.nodeEnd[n] == 0 ? e.tail : e.head) = vBi;
  }
  Id eB = uniqueEdgeId(out, v + "-" + vB);
  int eBi = out.addEdge(eB, out.vertices[vi], vB);

  for (size_t fi = 0; fi < c.faces.size(); ++fi) {
    const FaceC& f = c.faces[fi];
    int k = static_cast<int>(f.trail.size());
    std::vector<Traversal> trail;
    for (int i = 0; i < k; ++i) {
      const Traversal& t = f.trail[i];
      trail.push_back(t);
      if (c.travHead(t) != vi) continue;
      const Traversal& nxt = f.trail[(i + 1) % k];
      int nHead = lg.nodeOfEnd(t.edge, t.forward ? 1 : 0);
      int nNext = lg.nodeOfEnd(nxt.edge, nxt.forward ? 0 : 1);
      bool a = inB(nHead), b = inB(nNext);
      if (a == b) continue;
      // Crossing between the branch side and the cut node: route through eB.
      trail.push_back(Traversal{eBi, !a});
    }
    out.faces[fi].trail = trail;
  }
  out.recomputeFlags();
  return out;
}

Complex2 stretch_2_separator(const Complex2& c, const Id& v, const Id& aEdge,
                             const Id& bEdge) {
  constexpr auto K = StretchOp::Kind::Stretch2Sep;
  int vi = c.vertexIndex(v);
  if (vi < 0) fail(K, "unknown vertex " + v);
  if (hasLoopAt(c, vi)) fail(K, "loop at " + v + " unsupported");
  int aE = c.edgeIndex(aEdge), bE = c.edgeIndex(bEdge);
  if (aE < 0 || bE < 0 || aE == bE) fail(K, "bad edge arguments");
  LinkGraph lg = link_graph(c, vi);
  if (!is_k_connected(lg.g, 2)) fail(K, "link at " + v + " is not 2-connected");
  int aNode = nodeAt(c, lg, aE), bNode = nodeAt(c, lg, bE);
  auto comp = componentsWithout(lg.g, {aNode, bNode});
  int parts = componentMax(comp) + 1;
  if (parts < 2) fail(K, "{" + aEdge + ", " + bEdge + "} is not a 2-separator of the link at " + v);
  int uA = c.edges[aE].tail == vi ? c.edges[aE].head : c.edges[aE].tail;
  int uB = c.edges[bE].tail == vi ? c.edges[bE].head : c.edges[bE].tail;

  Complex2 out;
  for (int x = 0; x < static_cast<int>(c.vertices.size()); ++x)
    if (x != vi) out.addVertex(c.vertices[x]);
  std::vector<Id> pageVertex(parts);
  for (int p = 0; p < parts; ++p) {
    pageVertex[p] = uniqueVertexId(out, v + "." + std::to_string(p + 1));
    out.addVertex(pageVertex[p]);
  }
  // Old edges except a and b; ends at v move to their component's vertex.
  std::vector<int> newEdgeOf(c.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    if (e == aE || e == bE) continue;
    Id tail = c.vertices[c.edges[e].tail];
    Id head = c.vertices[c.edges[e].head];
    if (c.edges[e].tail == vi) tail = pageVertex[comp[nodeAt(c, lg, e)]];
    if (c.edges[e].head == vi) head = pageVertex[comp[nodeAt(c, lg, e)]];
    newEdgeOf[e] = out.addEdge(c.edges[e].id, tail, head);
  }
  Id uAid = c.vertices[uA], uBid = c.vertices[uB];
  int spine = out.addEdge(uniqueEdgeId(out, uAid + "~" + uBid), uAid, uBid);
  std::vector<int> pEdge(parts), qEdge(parts);
  for (int p = 0; p < parts; ++p) {
    pEdge[p] = out.addEdge(uniqueEdgeId(out, uAid + "~" + pageVertex[p]), uAid, pageVertex[p]);
    qEdge[p] = out.addEdge(uniqueEdgeId(out, uBid + "~" + pageVertex[p]), uBid, pageVertex[p]);
  }

  auto partnerNode = [&](const FaceC& f, int pos) {
    int q = cornerPartnerPos(c, f, pos, vi);
    const Traversal& t = f.trail[q];
    int end = c.travTail(t) == vi ? (t.forward ? 0 : 1) : (t.forward ? 1 : 0);
    return lg.nodeOfEnd(t.edge, end);
  };

  for (const FaceC& f : c.faces) {
    std::vector<Traversal> trail;
    for (int i = 0; i < static_cast<int>(f.trail.size()); ++i) {
      const Traversal& t = f.trail[i];
      if (t.edge == aE) {
        int n = partnerNode(f, i);
        bool intoV = c.travHead(t) == vi;  // running u_a -> v
        if (n == bNode) {
          // Corner between the two separator nodes: shortcut over the spine.
          trail.push_back(Traversal{spine, intoV == (out.edges[spine].tail == out.vertexIndex(uAid))});
        } else {
          int e = pEdge[comp[n]];  // tail u_a, head page vertex
          trail.push_back(Traversal{e, intoV});
        }
      } else if (t.edge == bE) {
        int n = partnerNode(f, i);
        if (n == aNode) continue;  // handled at the a traversal
        int e = qEdge[comp[n]];  // tail u_b, head page vertex
        bool intoV = c.travHead(t) == vi;
        trail.push_back(Traversal{e, intoV});
      } else {
        trail.push_back(Traversal{newEdgeOf[t.edge], t.forward});
      }
    }
    out.faces.push_back(FaceC{f.id, trail});
  }
  // One triangular page per component over the spine.
  for (int p = 0; p < parts; ++p) {
    Id fid = uniqueFaceId(out, v + "#" + std::to_string(p + 1));
    out.faces.push_back(FaceC{fid, {Traversal{spine, true}, Traversal{qEdge[p], true},
                                    Traversal{pEdge[p], false}}});
  }
  out.recomputeFlags();
  return out;
}

Complex2 stretch_edge(const Complex2& c, const Id& e, const Id& f1, const Id& f2) {
  constexpr auto K = StretchOp::Kind::StretchEdge;
  int ei = c.edgeIndex(e);
  int f1i = c.faceIndex(f1), f2i = c.faceIndex(f2);
  if (ei < 0 || f1i < 0 || f2i < 0) fail(K, "unknown cell argument");
  if (!stretchEdgeOk(c, ei, f1i, f2i)) fail(K, "the faces " + f1 + ", " + f2 + " are not rotator-adjacent at " + e + " in every planar link rotation");
  Complex2 out = c;
  Id e2 = uniqueEdgeId(out, e + "'");
  int e2i = out.addEdge(e2, out.vertices[out.edges[ei].tail], out.vertices[out.edges[ei].head]);
  for (int fi = 0; fi < static_cast<int>(out.faces.size()); ++fi) {
    if (fi == f1i || fi == f2i) continue;
    for (Traversal& t : out.faces[fi].trail)
      if (t.edge == ei) t.edge = e2i;
  }
  Id fid = uniqueFaceId(out, "[" + e + "]");
  out.faces.push_back(FaceC{fid, {Traversal{ei, true}, Traversal{e2i, false}}});
  out.recomputeFlags();
  return out;
}

Complex2 contract_reversible(const Complex2& c, const Id& e) {
  constexpr auto K = StretchOp::Kind::ContractReversible;
  int ei = c.edgeIndex(e);
  if (ei < 0) fail(K, "unknown edge " + e);
  if (c.edges[ei].isLoop()) fail(K, "loop edges are not reversible");
  if (!contractReversibleOkAt(c, c.edges[ei].tail, ei) ||
      !contractReversibleOkAt(c, c.edges[ei].head, ei))
    fail(K, "endpoint links of " + e + " are not para-stars with " + e + " of maximum degree");
  return contract_edge(c, e);
}

Complex2 apply_stretch(const Complex2& c, const StretchOp& op) {
  switch (op.kind) {
    case StretchOp::Kind::StretchBranch:
      return stretch_branch(c, op.vertex, op.cutEdge, op.branchEdge);
    case StretchOp::Kind::Stretch2Sep:
      return stretch_2_separator(c, op.vertex, op.cutEdge, op.branchEdge);
    case StretchOp::Kind::StretchEdge:
      return stretch_edge(c, op.edge, op.face1, op.face2);
    case StretchOp::Kind::ContractReversible:
      return contract_reversible(c, op.edge);
    case StretchOp::Kind::SplitVertex:
      return split_vertex(c, op.vertex);
  }
  throw std::invalid_argument("unknown stretching operation");
}

std::vector<StretchOp> applicable_stretch_ops(const Complex2& c, std::size_t cap) {
  std::vector<StretchOp> ops;
  auto full = [&] { return ops.size() >= cap; };
  for (int v = 0; v < static_cast<int>(c.vertices.size()) && !full(); ++v) {
    if (hasLoopAt(c, v)) continue;
    LinkGraph lg = link_graph(c, v);
    if (lg.g.numNodes() == 0) continue;
    if (!lg.g.isConnected()) {
      ops.push_back(StretchOp{StretchOp::Kind::SplitVertex, c.vertices[v], "", "", "", "", ""});
      continue;
    }
    for (int n = 0; n < lg.g.numNodes() && !full(); ++n) {
      auto comp = componentsWithout(lg.g, {n});
      int parts = componentMax(comp) + 1;
      if (parts < 2) continue;
      for (int p = 0; p < parts && !full(); ++p) {
        int rep = -1;
        for (int m = 0; m < lg.g.numNodes(); ++m)
          if (comp[m] == p) { rep = m; break; }
        ops.push_back(StretchOp{StretchOp::Kind::StretchBranch, c.vertices[v],
                                c.edges[lg.nodeEdge[n]].id, c.edges[lg.nodeEdge[rep]].id,
                                "", "", ""});
      }
    }
    if (is_k_connected(lg.g, 2)) {
      for (int a = 0; a < lg.g.numNodes() && !full(); ++a)
        for (int b = a + 1; b < lg.g.numNodes() && !full(); ++b) {
          if (componentMax(componentsWithout(lg.g, {a, b})) + 1 < 2) continue;
          ops.push_back(StretchOp{StretchOp::Kind::Stretch2Sep, c.vertices[v],
                                  c.edges[lg.nodeEdge[a]].id, c.edges[lg.nodeEdge[b]].id,
                                  "", "", ""});
        }
    }
  }
  for (int e = 0; e < static_cast<int>(c.edges.size()) && !full(); ++e) {
    if (c.edges[e].isLoop()) continue;
    if (contractReversibleOkAt(c, c.edges[e].tail, e) &&
        contractReversibleOkAt(c, c.edges[e].head, e))
      ops.push_back(StretchOp{StretchOp::Kind::ContractReversible, "", "", "",
                              c.edges[e].id, "", ""});
    auto fs = c.facesAt(e);
    if (fs.size() < 3) continue;
    for (size_t i = 0; i < fs.size() && !full(); ++i)
      for (size_t j = 0; j < fs.size() && !full(); ++j) {
        if (i == j) continue;
        if (stretchEdgeOk(c, e, fs[i], fs[j]))
          ops.push_back(StretchOp{StretchOp::Kind::StretchEdge, "", "", "",
                                  c.edges[e].id, c.faces[fs[i]].id, c.faces[fs[j]].id});
      }
  }
  return ops;
}

namespace {

// Classes normalization stops at: subdivisions of 3-connected graphs,
// parallel graphs, free graphs, and (stars of) parallel graphs glued at one
// vertex, the locally almost 2-connected intermediate form.
bool targetClass(const GraphClass& cls) {
  return cls.subdiv3connected || cls.parallel || cls.freeGraph || cls.paraStar ||
         cls.starOfParallel;
}

// A 2-separator is proper unless it cuts off exactly one path component
// without a direct a-b link.
bool properSeparator(const Multigraph& g, int a, int b, const std::vector<int>& comp) {
  int parts = componentMax(comp) + 1;
  if (parts != 2) return true;
  bool abEdge = false;
  for (const auto& e : g.edges) {
    auto pair = std::minmax(e.u, e.v);
    if (pair == std::minmax(a, b)) abEdge = true;
  }
  if (abEdge) return true;
  for (int p = 0; p < 2; ++p) {
    std::vector<int> edgeIdxs;
    for (int e = 0; e < g.numEdges(); ++e)
      if (comp[g.edges[e].u] == p && comp[g.edges[e].v] == p) edgeIdxs.push_back(e);
    Multigraph sub = g.inducedByEdges(edgeIdxs);
    bool isPath = sub.numEdges() > 0 && sub.isConnected();
    for (int n = 0; n < sub.numNodes(); ++n)
      if (sub.degree(n) > 2) isPath = false;
    int deg1 = 0;
    for (int n = 0; n < sub.numNodes(); ++n)
      if (sub.degree(n) == 1) ++deg1;
    if (isPath && deg1 != 2) isPath = false;
    int size = 0;
    for (int n = 0; n < g.numNodes(); ++n)
      if (comp[n] == p) ++size;
    if (size == 1) isPath = true;  // a single node is a trivial path
    if (isPath) return false;
  }
  return true;
}

}  // namespace

NormalizeResult normalize(const Complex2& c, long long maxSteps) {
  NormalizeResult res;
  res.complex = c;
  while (res.steps < maxSteps) {
    std::optional<StretchOp> next;
    bool allTarget = true;
    for (int v = 0; v < static_cast<int>(res.complex.vertices.size()); ++v) {
      LinkGraph lg = link_graph(res.complex, v);
      if (lg.g.numNodes() == 0) continue;
      if (!planarLink(lg.g)) {
        res.nonPlanarLink = res.complex.vertices[v];
        return res;
      }
      if (!lg.g.isConnected()) {
        next = StretchOp{StretchOp::Kind::SplitVertex, res.complex.vertices[v], "", "", "", "", ""};
        break;
      }
      if (hasLoopAt(res.complex, v)) continue;
      GraphClass cls = classify_graph(lg.g);
      if (targetClass(cls)) continue;
      allTarget = false;
      // Cut node: stretch off its largest branch. Single-node branches are
      // pendant tufts a previous stretch already split off; stretching them
      // again would only recreate the same shape.
      for (int n = 0; n < lg.g.numNodes() && !next; ++n) {
        auto comp = componentsWithout(lg.g, {n});
        int parts = componentMax(comp) + 1;
        if (parts < 2) continue;
        std::vector<int> size(parts, 0);
        for (int m = 0; m < lg.g.numNodes(); ++m)
          if (comp[m] >= 0) ++size[comp[m]];
        int best = -1;
        for (int p = 0; p < parts; ++p)
          if (size[p] >= 2 && (best < 0 || size[p] > size[best])) best = p;
        if (best < 0) continue;
        for (int m = 0; m < lg.g.numNodes(); ++m)
          if (comp[m] == best) {
            next = StretchOp{StretchOp::Kind::StretchBranch, res.complex.vertices[v],
                             res.complex.edges[lg.nodeEdge[n]].id,
                             res.complex.edges[lg.nodeEdge[m]].id, "", "", ""};
            break;
          }
      }
      // Proper 2-separator of a 2-connected link.
      if (!next && is_k_connected(lg.g, 2)) {
        for (int a = 0; a < lg.g.numNodes() && !next; ++a)
          for (int b = a + 1; b < lg.g.numNodes() && !next; ++b) {
            auto comp = componentsWithout(lg.g, {a, b});
            if (componentMax(comp) + 1 < 2) continue;
            if (!properSeparator(lg.g, a, b, comp)) continue;
            next = StretchOp{StretchOp::Kind::Stretch2Sep, res.complex.vertices[v],
                             res.complex.edges[lg.nodeEdge[a]].id,
                             res.complex.edges[lg.nodeEdge[b]].id, "", "", ""};
          }
      }
      if (next) break;
    }
    if (!next) {
      res.complete = allTarget;
      return res;
    }
    res.complex = apply_stretch(res.complex, *next);
    res.script.push_back(*next);
    ++res.steps;
  }
  return res;  // step cap hit; complete stays false
}

bool helicopter_planar(const HelicopterGraph& h) {
  const Multigraph& g = h.g;
  if (!planarLink(g)) throw std::invalid_argument("helicopter graph is not planar");
  auto cyclicOrder = [&](const GraphRotation& r, int n, const std::array<int, 3>& es)
      -> std::optional<int> {
    // Position of each marked edge's first half at n, read around the rotator.
    std::array<int, 3> pos{-1, -1, -1};
    const auto& rot = r.rot[n];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i)
      for (int j = 0; j < 3; ++j)
        if (rot[i].e == es[j] && pos[j] < 0) pos[j] = i;
    for (int j = 0; j < 3; ++j)
      if (pos[j] < 0) return std::nullopt;
    // Orientation of (e0, e1, e2) around the rotator: +1 or -1.
    bool fwd = (pos[0] < pos[1] && pos[1] < pos[2]) || (pos[1] < pos[2] && pos[2] < pos[0]) ||
               (pos[2] < pos[0] && pos[0] < pos[1]);
    return fwd ? 1 : -1;
  };
  std::array<int, 3> as{h.pairs[0].first, h.pairs[1].first, h.pairs[2].first};
  std::array<int, 3> bs{h.pairs[0].second, h.pairs[1].second, h.pairs[2].second};
  auto test = [&](const GraphRotation& r) {
    auto oa = cyclicOrder(r, h.v, as);
    auto ob = cyclicOrder(r, h.w, bs);
    return oa && ob && *oa == -*ob;
  };
  GraphClass cls = classify_graph(g);
  if (cls.subdiv3connected) {
    auto r = planar_rotation_of_graph(g);
    GraphRotation rev = *r;
    rev.reverseAll();
    return test(*r) || test(rev);
  }
  constexpr std::uint64_t kCap = 2000000;
  if (rotation_count(g, kCap) >= kCap)
    throw std::invalid_argument("helicopter graph too large to enumerate");
  bool good = false;
  for_each_rotation(g, kCap, [&](const GraphRotation& r) {
    if (trace_faces(g, r).planar() && test(r)) {
      good = true;
      return false;
    }
    return true;
  });
  return good;
}

std::optional<ParaCycle> find_para_cycle(const Complex2& c) {
  int nv = static_cast<int>(c.vertices.size());
  std::vector<std::optional<std::pair<int, int>>> branchEdges(nv);  // two cycle edges at v
  for (int v = 0; v < nv; ++v) {
    if (hasLoopAt(c, v)) continue;
    LinkGraph lg = link_graph(c, v);
    std::pair<int, int> br;
    if (!is_parallel_graph(lg.g, &br)) continue;
    int e1 = lg.nodeEdge[br.first], e2 = lg.nodeEdge[br.second];
    if (c.faceDegree(e1) < 3 || c.faceDegree(e2) < 3) continue;
    branchEdges[v] = std::make_pair(e1, e2);
  }
  for (int start = 0; start < nv; ++start) {
    if (!branchEdges[start]) continue;
    ParaCycle o;
    int v = start;
    int e = branchEdges[start]->first;
    std::set<int> seen;
    bool ok = true;
    while (true) {
      o.vertices.push_back(v);
      o.edges.push_back(e);
      seen.insert(v);
      int w = c.edges[e].tail == v ? c.edges[e].head : c.edges[e].tail;
      if (w == start) break;
      if (!branchEdges[w] || seen.count(w)) {
        ok = false;
        break;
      }
      auto [a, b] = *branchEdges[w];
      if (e == a) e = b;
      else if (e == b) e = a;
      else {
        ok = false;
        break;
      }
      v = w;
    }
    if (!ok || o.vertices.size() < 3) continue;
    // The walk must have used both branch edges at every cycle vertex.
    std::map<int, std::set<int>> used;
    int k = static_cast<int>(o.edges.size());
    for (int i = 0; i < k; ++i) {
      used[o.vertices[i]].insert(o.edges[i]);
      used[o.vertices[(i + 1) % k]].insert(o.edges[i]);
    }
    bool branchMatch = true;
    for (int vv : o.vertices) {
      auto [a, b] = *branchEdges[vv];
      if (used[vv] != std::set<int>{a, b}) branchMatch = false;
    }
    if (branchMatch) return o;
  }
  return std::nullopt;
}

MegaFaces mega_faces(const Complex2& c, const ParaCycle& o) {
  std::set<int> onCycle(o.edges.begin(), o.edges.end());
  int nf = static_cast<int>(c.faces.size());
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    if (onCycle.count(e)) continue;
    auto fs = c.facesAt(e);
    for (size_t i = 1; i < fs.size(); ++i) parent[find(fs[i])] = find(fs[0]);
  }
  std::map<int, int> classIdx;
  MegaFaces mf;
  for (int f = 0; f < nf; ++f) {
    int r = find(f);
    if (!classIdx.count(r)) {
      classIdx[r] = static_cast<int>(mf.classes.size());
      mf.classes.emplace_back();
    }
    mf.classes[classIdx[r]].push_back(f);
  }
  int e0 = o.edges[0];
  for (const auto& cls : mf.classes) {
    int w = 0;
    for (int f : cls)
      for (const Traversal& t : c.faces[f].trail)
        if (t.edge == e0) ++w;
    mf.windings.push_back(w);
  }
  return mf;
}

std::optional<bool> search_planar_rotation_system(const Complex2& c, long long nodeCap,
                                                  RotationSystem* out) {
  RotationSystem s = default_rotation(c);
  int ne = static_cast<int>(c.edges.size());
  std::vector<int> wild;
  for (int e = 0; e < ne; ++e)
    if (s.sigma[e].size() >= 3) wild.push_back(e);
  std::sort(wild.begin(), wild.end(), [&](int a, int b) {
    if (s.sigma[a].size() != s.sigma[b].size()) return s.sigma[a].size() > s.sigma[b].size();
    return a < b;
  });
  // Vertex v can be link-checked once every incident wild edge is decided.
  std::vector<int> posOf(ne, -1);
  for (int i = 0; i < static_cast<int>(wild.size()); ++i) posOf[wild[i]] = i;
  int nv = static_cast<int>(c.vertices.size());
  std::vector<LinkGraph> links;
  links.reserve(nv);
  for (int v = 0; v < nv; ++v) links.push_back(link_graph(c, v));
  std::vector<std::vector<int>> checkAt(wild.size() + 1);
  for (int v = 0; v < nv; ++v) {
    int last = -1;
    for (int n = 0; n < links[v].g.numNodes(); ++n)
      last = std::max(last, posOf[links[v].nodeEdge[n]]);
    checkAt[last + 1].push_back(v);
  }
  long long budget = nodeCap;
  bool capped = false;
  bool found = false;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (found || capped) return;
    for (int v : checkAt[i]) {
      GraphRotation r = induced_link_rotation(c, s, links[v]);
      if (!trace_faces(links[v].g, r).planar()) return;
    }
    if (i == wild.size()) {
      if (is_planar_rotation_system(c, s).planar) {
        found = true;
        if (out) *out = s;
      }
      return;
    }
    int e = wild[i];
    auto& rot = s.sigma[e];
    std::sort(rot.begin() + 1, rot.end(), [](const SigmaEntry& a, const SigmaEntry& b) {
      return std::tie(a.face, a.pos) < std::tie(b.face, b.pos);
    });
    auto base = rot;
    do {
      if (--budget < 0) {
        capped = true;
        return;
      }
      rec(i + 1);
      if (found || capped) return;
    } while (std::next_permutation(
        rot.begin() + 1, rot.end(), [](const SigmaEntry& a, const SigmaEntry& b) {
          return std::tie(a.face, a.pos) < std::tie(b.face, b.pos);
        }));
    rot = base;
  };
  rec(0);
  if (found) return true;
  if (capped) return std::nullopt;
  return false;
}

namespace {

void finishVerdict(Verdict& v, const Complex2& c, const DecideOptions& opt) {
  v.p = opt.p;
  v.assumedSimplyConnected = opt.assumeSimplyConnected;
  v.h1Trivial = homology_trivial(c, opt.p);
  switch (v.status) {
    case Verdict::Status::Found:
      v.interpretation = v.h1Trivial ? Verdict::Interpretation::EmbedsInS3IfSimplyConnected
                                     : Verdict::Interpretation::EmbedsInOrientable3Manifold;
      break;
    case Verdict::Status::None:
      v.interpretation = Verdict::Interpretation::NotEmbeddableAnywhereOrientable;
      break;
    default:
      v.interpretation = Verdict::Interpretation::Unknown;
  }
}

}  // namespace

Verdict decide_general(const Complex2& c, const DecideOptions& opt) {
  Verdict local = decide_locally_3_connected(c, opt);
  if (local.status != Verdict::Status::Inapplicable) return local;

  NormalizeResult norm = normalize(c);
  if (norm.nonPlanarLink) {
    Verdict v;
    v.status = Verdict::Status::None;
    v.obstruction = extract_cone_obstruction(norm.complex, *norm.nonPlanarLink);
    v.obstruction->description +=
        norm.script.empty() ? "" : " (found after " + std::to_string(norm.script.size()) +
                                       " stretching steps; the script replays on the stretched complex)";
    v.reason = "a stretching of the complex has a non-planar link at " + *norm.nonPlanarLink;
    finishVerdict(v, c, opt);
    return v;
  }
  bool stretched = !norm.script.empty();
  if (stretched) {
    Verdict inner = decide_locally_3_connected(norm.complex, opt);
    if (inner.status == Verdict::Status::Found) {
      Verdict v;
      v.status = Verdict::Status::Found;
      RotationSystem sigma;
      auto direct = search_planar_rotation_system(c, 2000000, &sigma);
      if (direct.has_value() && *direct) v.sigma = sigma;
      v.reason = "a planar rotation system exists on the stretched complex"
                 " (existence transfers along stretching operations)";
      finishVerdict(v, c, opt);
      return v;
    }
    if (inner.status == Verdict::Status::None) {
      Verdict v = inner;
      if (v.obstruction)
        v.obstruction->description +=
            " (found after " + std::to_string(norm.script.size()) +
            " stretching steps; the script replays on the stretched complex)";
      v.reason = "no planar rotation system on the stretched complex"
                 " (existence transfers along stretching operations)";
      finishVerdict(v, c, opt);
      return v;
    }
  }

  // Torus crossing: a para-cycle whose faces glue into two mega faces with
  // different winding numbers, confirmed by search.
  if (auto pc = find_para_cycle(norm.complex)) {
    MegaFaces mf = mega_faces(norm.complex, *pc);
    if (mf.classes.size() == 2 && mf.windings[0] != mf.windings[1] && mf.windings[0] >= 1 &&
        mf.windings[1] >= 1) {
      RotationSystem sigma;
      auto r = search_planar_rotation_system(norm.complex, 20000000, &sigma);
      if (r.has_value() && !*r) {
        Verdict v;
        v.status = Verdict::Status::None;
        Obstruction ob;
        ob.kind = ObstructionKind::TorusCrossing;
        ob.windings = std::minmax(mf.windings[0], mf.windings[1]);
        ob.witnessCell = norm.complex.edges[pc->edges[0]].id;
        std::string vs;
        for (int vv : pc->vertices) vs += (vs.empty() ? "" : ", ") + norm.complex.vertices[vv];
        ob.description = "two mega faces over the base cycle (" + vs + ") with windings " +
                         std::to_string(ob.windings.first) + " and " +
                         std::to_string(ob.windings.second);
        v.obstruction = ob;
        v.reason = "torus crossing over a para-cycle";
        finishVerdict(v, c, opt);
        return v;
      }
      if (r.has_value() && *r && !stretched) {
        Verdict v;
        v.status = Verdict::Status::Found;
        v.sigma = sigma;
        v.reason = "planar rotation system found by pruned search";
        finishVerdict(v, c, opt);
        return v;
      }
    }
  }

  // Fallback: pruned exhaustive search on the original complex.
  RotationSystem sigma;
  auto r = search_planar_rotation_system(c, 20000000, &sigma);
  if (!r.has_value()) {
    Verdict v;
    v.reason = "the pruned rotation-system search exceeded its node budget";
    finishVerdict(v, c, opt);
    return v;
  }
  Verdict v;
  if (*r) {
    v.status = Verdict::Status::Found;
    v.sigma = sigma;
    v.reason = "planar rotation system found by pruned search";
  } else {
    v.status = Verdict::Status::None;
    v.reason = "pruned exhaustive search over all rotation systems found none planar";
  }
  finishVerdict(v, c, opt);
  return v;
}

Verdict decide(const Complex2& c, const DecideOptions& opt) {
  Verdict local = decide_locally_3_connected(c, opt);
  if (local.status != Verdict::Status::Inapplicable) return local;
  return decide_general(c, opt);
}

}  // namespace emb3
