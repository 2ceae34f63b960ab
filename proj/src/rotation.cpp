#include "emb3/rotation.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

#include "emb3/homology.hpp"

namespace emb3 {

namespace {

// Union-find over face-orientation slots: slot(f, positive) = 2f, else 2f+1.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int slot(int face, bool positive) { return 2 * face + (positive ? 0 : 1); }

// The orientation of entry.face that induces the forward direction on the
// edge it traverses.
bool forwardSide(const SigmaEntry& t) { return t.forward; }

// Gluing relation around one edge: consecutive traversals in sigma(e) share a
// sector; the side of the earlier face inducing "forward" on e meets the side
// of the later face inducing "backward". A single traversal relates the two
// orientations of its own face.
void relate(UnionFind& uf, const std::vector<SigmaEntry>& se) {
  int d = static_cast<int>(se.size());
  for (int i = 0; i < d; ++i) {
    const SigmaEntry& a = se[i];
    const SigmaEntry& b = se[(i + 1) % d];
    uf.unite(slot(a.face, forwardSide(a)), slot(b.face, !forwardSide(b)));
  }
}

}  // namespace

RotationSystem default_rotation(const Complex2& c) {
  RotationSystem s;
  s.sigma.resize(c.edges.size());
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
    const auto& trail = c.faces[f].trail;
    for (int i = 0; i < static_cast<int>(trail.size()); ++i)
      s.sigma[trail[i].edge].push_back(SigmaEntry{f, i, trail[i].forward});
  }
  return s;
}

bool valid_rotation(const Complex2& c, const RotationSystem& s) {
  if (s.sigma.size() != c.edges.size()) return false;
  RotationSystem ref = default_rotation(c);
  for (size_t e = 0; e < c.edges.size(); ++e) {
    auto a = ref.sigma[e];
    auto b = s.sigma[e];
    auto key = [](const SigmaEntry& t) { return std::tuple(t.face, t.pos, t.forward); };
    auto lt = [&](const SigmaEntry& x, const SigmaEntry& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    if (a != b) return false;
  }
  return true;
}

GraphRotation induced_link_rotation(const Complex2& c, const RotationSystem& s,
                                    const LinkGraph& lg) {
  // (face, corner) -> link edge index.
  std::map<std::pair<int, int>, int> cornerEdge;
  for (int le = 0; le < lg.g.numEdges(); ++le)
    cornerEdge[{lg.linkFace[le], lg.linkCorner[le]}] = le;

  GraphRotation r;
  r.rot.resize(lg.g.numNodes());
  for (int n = 0; n < lg.g.numNodes(); ++n) {
    int e = lg.nodeEdge[n];
    int end = lg.nodeEnd[n];
    std::vector<SigmaEntry> order = s.sigma[e];
    if (end == 0) std::reverse(order.begin(), order.end());
    for (const SigmaEntry& t : order) {
      int len = static_cast<int>(c.faces[t.face].trail.size());
      Half h;
      if (end == (t.forward ? 1 : 0)) {
        // This node is where the traversal arrives: corner pos, first end.
        h = Half{cornerEdge.at({t.face, t.pos}), 0};
      } else {
        // Departure end: corner pos-1, second end.
        h = Half{cornerEdge.at({t.face, (t.pos + len - 1) % len}), 1};
      }
      r.rot[n].push_back(h);
    }
  }
  return r;
}

PlanarityReport is_planar_rotation_system(const Complex2& c, const RotationSystem& s) {
  PlanarityReport rep;
  rep.planar = true;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    LinkGraph lg = link_graph(c, v);
    GraphRotation r = induced_link_rotation(c, s, lg);
    TracedSurface t = trace_faces(lg.g, r);
    if (!t.planar()) rep.planar = false;
    rep.perVertex.push_back(std::move(t));
  }
  return rep;
}

bool for_each_rotation_system(const Complex2& c, long long cap,
                              const std::function<bool(const RotationSystem&)>& fn) {
  RotationSystem s = default_rotation(c);
  std::vector<int> wild;  // edges with a real choice
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
    if (s.sigma[e].size() >= 3) wild.push_back(e);
  // Canonical starting point per edge: sorted, first entry pinned.
  for (int e : wild) {
    auto& se = s.sigma[e];
    std::sort(se.begin(), se.end(), [](const SigmaEntry& a, const SigmaEntry& b) {
      return std::tuple(a.face, a.pos) < std::tuple(b.face, b.pos);
    });
  }
  long long count = 0;
  bool stopped = false;
  auto emit = [&]() -> bool {  // returns false to abort everything
    if (++count > cap) return false;
    if (!fn(s)) stopped = true;
    return !stopped;
  };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == wild.size()) return emit();
    auto& se = s.sigma[wild[i]];
    auto cmp = [](const SigmaEntry& a, const SigmaEntry& b) {
      return std::tuple(a.face, a.pos) < std::tuple(b.face, b.pos);
    };
    std::sort(se.begin() + 1, se.end(), cmp);
    do {
      if (!rec(i + 1)) return false;
    } while (std::next_permutation(se.begin() + 1, se.end(), cmp));
    return true;
  };
  bool complete = rec(0);
  return complete || stopped;
}

long long rotation_system_count(const Complex2& c, long long cap) {
  long long n = 1;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    long long d = c.faceDegree(e);
    for (long long k = 2; k < d; ++k) {
      n *= k;
      if (n >= cap) return cap;
    }
  }
  return n;
}

std::vector<LocalSurface> local_surfaces(const Complex2& c, const RotationSystem& s) {
  int nf = static_cast<int>(c.faces.size());
  UnionFind uf(2 * nf);
  for (const auto& se : s.sigma) relate(uf, se);

  // Deterministic class ordering by smallest slot.
  std::map<int, int> classIndex;
  std::vector<LocalSurface> out;
  for (int sl = 0; sl < 2 * nf; ++sl) {
    int root = uf.find(sl);
    if (!classIndex.count(root)) {
      classIndex[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[classIndex[root]].orientations.push_back({sl / 2, sl % 2 == 0});
  }
  for (auto& ls : out) ls.F = static_cast<long long>(ls.orientations.size());

  // One glued edge per sector.
  for (const auto& se : s.sigma) {
    int d = static_cast<int>(se.size());
    for (int i = 0; i < d; ++i) {
      int cl = classIndex[uf.find(slot(se[i].face, forwardSide(se[i])))];
      out[cl].E += 1;
    }
  }

  // Vertices of the glued surfaces: orbits of polygon corners under the side
  // gluing. A state (f, o, i) stands at the corner entered before crossing
  // side i of the polygon (f, o). Crossing lands on the matching side of the
  // sector partner, oriented oppositely, and turns to that polygon's next
  // side around the same surface vertex.
  {
    // Position of face f's traversal of edge e inside sigma(e).
    std::map<std::pair<int, int>, int> sigmaPos;  // (edge, face) -> index
    for (int e = 0; e < static_cast<int>(s.sigma.size()); ++e)
      for (int k = 0; k < static_cast<int>(s.sigma[e].size()); ++k)
        sigmaPos[{e, s.sigma[e][k].face}] = k;

    auto stateId = [&](int f, bool pos, int side) {
      return (2 * f + (pos ? 0 : 1)) * 1000000 + side;
    };
    std::set<long long> seen;
    for (int f = 0; f < nf; ++f) {
      int len = static_cast<int>(c.faces[f].trail.size());
      for (int oi = 0; oi < 2; ++oi) {
        bool o = oi == 0;
        for (int s0 = 0; s0 < len; ++s0) {
          if (seen.count(stateId(f, o, s0))) continue;
          int cl = classIndex[uf.find(slot(f, o))];
          int cf = f, cs = s0;
          bool co = o;
          do {
            seen.insert(stateId(cf, co, cs));
            const Traversal& t = c.faces[cf].trail[cs];
            int e = t.edge;
            int i = sigmaPos.at({e, cf});
            int d = static_cast<int>(s.sigma[e].size());
            bool inducesForward = co == t.forward;
            const SigmaEntry& g =
                s.sigma[e][inducesForward ? (i + 1) % d : (i + d - 1) % d];
            bool og = inducesForward == g.forward ? false : true;
            int glen = static_cast<int>(c.faces[g.face].trail.size());
            cf = g.face;
            co = og;
            cs = og ? (g.pos + 1) % glen : (g.pos + glen - 1) % glen;
          } while (!seen.count(stateId(cf, co, cs)));
          out[cl].V += 1;
        }
      }
    }
  }

  // The clone table maps traced link-complex faces into classes; when the
  // rotation system is planar these counts reproduce V (the vertex clones of
  // the lemma about local incidence).
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    LinkGraph lg = link_graph(c, v);
    GraphRotation r = induced_link_rotation(c, s, lg);
    TracedSurface t = trace_faces(lg.g, r);
    for (int tf = 0; tf < static_cast<int>(t.faces.size()); ++tf) {
      if (t.faces[tf].empty()) continue;  // vertex in no face: detached sphere
      const Dart& d = t.faces[tf].front();
      int cl = classIndex[uf.find(slot(lg.linkFace[d.e], d.end == 0))];
      out[cl].vertexClones.push_back({v, tf});
    }
  }
  return out;
}

DualComplex dual_complex(const Complex2& c, const RotationSystem& s) {
  if (!c.reasonable) throw std::invalid_argument("dual of an invalid complex");
  DualComplex d;
  d.surfaces = local_surfaces(c, s);

  // Rebuild the class index of each orientation slot.
  int nf = static_cast<int>(c.faces.size());
  std::vector<int> classOf(2 * nf, -1);
  for (int cl = 0; cl < static_cast<int>(d.surfaces.size()); ++cl)
    for (auto [f, pos] : d.surfaces[cl].orientations) classOf[slot(f, pos)] = cl;

  Complex2 raw;
  char buf[16];
  for (int cl = 0; cl < static_cast<int>(d.surfaces.size()); ++cl) {
    std::snprintf(buf, sizeof buf, "s%04d", cl);
    raw.addVertex(buf);
  }
  for (int f = 0; f < nf; ++f) {
    EdgeC e;
    e.id = c.faces[f].id;
    e.tail = classOf[slot(f, false)];
    e.head = classOf[slot(f, true)];
    raw.edges.push_back(e);
  }
  std::vector<int> dualFaceOfEdge(c.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    if (s.sigma[e].empty()) continue;
    FaceC f;
    f.id = c.edges[e].id;
    for (const SigmaEntry& t : s.sigma[e])
      f.trail.push_back(Traversal{t.face, t.forward});
    dualFaceOfEdge[e] = static_cast<int>(raw.faces.size());
    raw.faces.push_back(f);
  }
  Diagnostics diag;
  auto checked = validate_complex(raw, diag);
  if (!checked) throw std::logic_error("dual complex failed validation: " +
                                       (diag.errors.empty() ? "" : diag.errors[0]));
  // c is canonical, so ids above are already sorted and indices survive.
  for (size_t i = 0; i < raw.edges.size(); ++i) assert(checked->edges[i].id == raw.edges[i].id);
  d.complex = *checked;

  // Rotation induced on the dual: around dual edge f (a face of C), the
  // incident dual faces follow f's trail.
  d.sigma.sigma.resize(d.complex.edges.size());
  for (int f = 0; f < nf; ++f) {
    const auto& trail = c.faces[f].trail;
    for (int i = 0; i < static_cast<int>(trail.size()); ++i) {
      int e = trail[i].edge;
      int df = dualFaceOfEdge[e];
      // Position of this traversal inside the dual face's trail.
      int pos = -1;
      for (int k = 0; k < static_cast<int>(s.sigma[e].size()); ++k)
        if (s.sigma[e][k].face == f) pos = k;
      assert(df >= 0 && pos >= 0);
      d.sigma.sigma[f].push_back(SigmaEntry{df, pos, trail[i].forward});
    }
  }
  return d;
}

EulerIdentityReport euler_identity_report(const Complex2& c, const RotationSystem& s,
                                          int p) {
  PlanarityReport pr = is_planar_rotation_system(c, s);
  if (!pr.planar) throw std::invalid_argument("rotation system is not planar");
  EulerIdentityReport rep;
  auto surfaces = local_surfaces(c, s);
  rep.lhs = static_cast<long long>(c.vertices.size()) -
            static_cast<long long>(c.edges.size()) +
            static_cast<long long>(c.faces.size()) -
            static_cast<long long>(surfaces.size());
  rep.equality = rep.lhs == 0;
  rep.nullhomologousAtP = homology_trivial(c, p);
  for (const auto& ls : surfaces) rep.genera.push_back(ls.genus());
  return rep;
}

SurfaceKind classify_bounded_surface(const Complex2& t) {
  if (t.skeletonComponents() != 1)
    throw std::invalid_argument("surface complex must be connected");
  int ne = static_cast<int>(t.edges.size());
  for (int e = 0; e < ne; ++e)
    if (t.faceDegree(e) > 2)
      throw std::invalid_argument("edge lies in more than two faces");
  // Links must be paths or single cycles.
  for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
    LinkGraph lg = link_graph(t, v);
    if (lg.g.numNodes() == 0 || !lg.g.isConnected())
      throw std::invalid_argument("vertex link is not connected");
    for (int n = 0; n < lg.g.numNodes(); ++n)
      if (lg.g.degree(n) > 2)
        throw std::invalid_argument("vertex link is not a path or cycle");
  }

  long long chi = static_cast<long long>(t.vertices.size()) - t.edges.size() +
                  t.faces.size();

  // Boundary subgraph: face-degree-1 edges.
  Multigraph bd;
  for (const auto& v : t.vertices) bd.addNode(v);
  for (int e = 0; e < ne; ++e)
    if (t.faceDegree(e) == 1)
      bd.addEdge(t.edges[e].id, t.vertices[t.edges[e].tail], t.vertices[t.edges[e].head]);
  int boundaryComponents = 0;
  {
    std::vector<int> comp = bd.componentOf();
    std::set<int> used;
    for (int e = 0; e < bd.numEdges(); ++e) used.insert(comp[bd.edges[e].u]);
    for (int v = 0; v < bd.numNodes(); ++v)
      if (bd.degree(v) != 0 && bd.degree(v) != 2)
        throw std::invalid_argument("boundary is not a disjoint union of cycles");
    boundaryComponents = static_cast<int>(used.size());
  }

  // Orientability: propagate face signs across interior (face-degree-2)
  // edges; compatible signs induce opposite directions on the shared edge.
  int nfaces = static_cast<int>(t.faces.size());
  std::vector<int> sign(nfaces, 0);
  bool orientable = true;
  RotationSystem s = default_rotation(t);
  std::vector<std::vector<std::pair<int, bool>>> adj(nfaces);  // (face, sameDir)
  for (int e = 0; e < ne; ++e) {
    if (s.sigma[e].size() != 2) continue;
    const SigmaEntry& a = s.sigma[e][0];
    const SigmaEntry& b = s.sigma[e][1];
    bool same = a.forward == b.forward;
    adj[a.face].push_back({b.face, same});
    adj[b.face].push_back({a.face, same});
  }
  for (int start = 0; start < nfaces; ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (auto [g, same] : adj[f]) {
        int want = same ? -sign[f] : sign[f];
        if (sign[g] == 0) {
          sign[g] = want;
          stack.push_back(g);
        } else if (sign[g] != want) {
          orientable = false;
        }
      }
    }
  }

  if (chi == 0 && boundaryComponents == 1 && !orientable) return SurfaceKind::MoebiusStrip;
  if (chi == 0 && boundaryComponents == 2 && orientable) return SurfaceKind::Annulus;
  return SurfaceKind::Other;
}

}  // namespace emb3
