#include "emb3/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace emb3 {

int Multigraph::addNode(const Id& id) {
  int i = nodeIndex(id);
  if (i >= 0) return i;
  nodes.push_back(id);
  return static_cast<int>(nodes.size()) - 1;
}

int Multigraph::addEdge(const Id& id, const Id& u, const Id& v) {
  return addEdgeIdx(id, addNode(u), addNode(v));
}

int Multigraph::addEdgeIdx(const Id& id, int u, int v) {
  edges.push_back(GraphEdge{id, u, v});
  return static_cast<int>(edges.size()) - 1;
}

int Multigraph::nodeIndex(const Id& id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == id) return static_cast<int>(i);
  return -1;
}

std::vector<Half> Multigraph::halvesAt(int n) const {
  std::vector<Half> out;
  for (int e = 0; e < numEdges(); ++e) {
    if (edges[e].u == n) out.push_back(Half{e, 0});
    if (edges[e].v == n) out.push_back(Half{e, 1});
  }
  return out;
}

int Multigraph::degree(int n) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.u == n) ++d;
    if (e.v == n) ++d;
  }
  return d;
}

bool Multigraph::isSimple() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.isLoop()) return false;
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) return false;
  }
  return true;
}

std::vector<int> Multigraph::componentOf() const {
  std::vector<int> comp(nodes.size(), -1);
  int c = 0;
  for (int s = 0; s < numNodes(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        for (int m : {e.u, e.v}) {
          int o = (m == e.u) ? e.v : e.u;
          if (m == n && comp[o] < 0) {
            comp[o] = c;
            stack.push_back(o);
          }
        }
      }
    }
    ++c;
  }
  return comp;
}

int Multigraph::componentCount() const {
  auto c = componentOf();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

bool Multigraph::isConnected() const { return componentCount() <= 1; }

void Multigraph::canonicalize() {
  std::vector<int> nodePerm(nodes.size());
  std::iota(nodePerm.begin(), nodePerm.end(), 0);
  std::sort(nodePerm.begin(), nodePerm.end(),
            [&](int a, int b) { return nodes[a] < nodes[b]; });
  std::vector<int> newIdx(nodes.size());
  std::vector<Id> newNodes(nodes.size());
  for (size_t i = 0; i < nodePerm.size(); ++i) {
    newIdx[nodePerm[i]] = static_cast<int>(i);
    newNodes[i] = nodes[nodePerm[i]];
  }
  nodes = newNodes;
  for (auto& e : edges) {
    e.u = newIdx[e.u];
    e.v = newIdx[e.v];
  }
  std::sort(edges.begin(), edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return a.id < b.id; });
}

Multigraph Multigraph::inducedByEdges(const std::vector<int>& edgeIdxs) const {
  Multigraph out;
  for (int e : edgeIdxs) {
    const auto& ge = edges[e];
    out.addEdge(ge.id, nodes[ge.u], nodes[ge.v]);
  }
  return out;
}

bool GraphRotation::covers(const Multigraph& g) const {
  if (static_cast<int>(rot.size()) != g.numNodes()) return false;
  std::set<Half> seen;
  for (int n = 0; n < g.numNodes(); ++n) {
    if (static_cast<int>(rot[n].size()) != g.degree(n)) return false;
    for (const Half& h : rot[n]) {
      if (g.endOf(h) != n) return false;
      if (!seen.insert(h).second) return false;
    }
  }
  return seen.size() == 2 * g.edges.size();
}

TracedSurface trace_faces(const Multigraph& g, const GraphRotation& r) {
  if (!r.covers(g)) throw std::invalid_argument("rotation does not cover graph");
  TracedSurface out;
  // Position of each half in its rotator.
  std::map<Half, std::pair<int, int>> pos;  // half -> (node, index)
  for (int n = 0; n < g.numNodes(); ++n)
    for (size_t i = 0; i < r.rot[n].size(); ++i)
      pos[r.rot[n][i]] = {n, static_cast<int>(i)};

  auto comp = g.componentOf();
  out.components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> compV(out.components, 0), compE(out.components, 0), compF(out.components, 0);
  for (int n = 0; n < g.numNodes(); ++n) ++compV[comp[n]];
  for (const auto& e : g.edges) ++compE[comp[e.u]];

  std::set<Dart> done;
  for (int e = 0; e < g.numEdges(); ++e) {
    for (int end : {0, 1}) {
      Dart start{e, end};
      if (done.count(start)) continue;
      std::vector<Dart> face;
      Dart d = start;
      do {
        face.push_back(d);
        done.insert(d);
        Half arrive{d.e, 1 - d.end};
        auto [n, i] = pos.at(arrive);
        const auto& rotator = r.rot[n];
        Half next = rotator[(i + 1) % rotator.size()];
        d = Dart{next.e, next.end};
      } while (!(d == start));
      out.faces.push_back(face);
      int c = comp[g.endOf(Half{e, end})];
      out.faceComponent.push_back(c);
      ++compF[c];
    }
  }
  out.componentEuler.resize(out.components);
  for (int c = 0; c < out.components; ++c) {
    if (compE[c] == 0) compF[c] = 1;  // a bare vertex traces one spherical face
    out.componentEuler[c] = compV[c] - compE[c] + compF[c];
  }
  return out;
}

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  size_t n = a.size();
  for (size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(s + i) % n];
    if (ok) return true;
  }
  return false;
}

bool cyclic_reverse_equal(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> rb(b.rbegin(), b.rend());
  return cyclic_equal(a, rb);
}

namespace {

bool connected_after_removal(const Multigraph& g, const std::vector<int>& removed) {
  std::vector<bool> gone(g.nodes.size(), false);
  for (int n : removed) gone[n] = true;
  int start = -1, alive = 0;
  for (int n = 0; n < g.numNodes(); ++n)
    if (!gone[n]) {
      ++alive;
      start = n;
    }
  if (alive == 0) return false;
  std::vector<bool> vis(g.nodes.size(), false);
  std::vector<int> stack{start};
  vis[start] = true;
  int seen = 1;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      if (gone[e.u] || gone[e.v]) continue;
      int o = -1;
      if (e.u == n) o = e.v;
      else if (e.v == n) o = e.u;
      if (o >= 0 && !vis[o]) {
        vis[o] = true;
        ++seen;
        stack.push_back(o);
      }
    }
  }
  return seen == alive;
}

bool subsets_keep_connected(const Multigraph& g, int removeCount) {
  std::vector<int> idx(removeCount, 0);
  std::function<bool(int, int)> rec = [&](int depth, int from) -> bool {
    if (depth == removeCount) {
      std::vector<int> rem(idx.begin(), idx.begin() + removeCount);
      return connected_after_removal(g, rem);
    }
    for (int n = from; n < g.numNodes(); ++n) {
      idx[depth] = n;
      if (!rec(depth + 1, n + 1)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

}  // namespace

bool is_k_connected(const Multigraph& g, int k) {
  if (k <= 0) return true;
  if (k == 1) return g.numNodes() >= 1 && g.isConnected();
  if (k == 2) {
    if (g.numNodes() < 2 || !g.isConnected()) return false;
    if (g.numNodes() == 2) {
      int pe = 0;
      for (const auto& e : g.edges)
        if (!e.isLoop()) ++pe;
      return pe >= 2;  // paper's convention for 2-vertex multigraphs
    }
    return subsets_keep_connected(g, 1);
  }
  if (g.numNodes() < k + 1) return false;  // footnote convention for k > 2
  for (int r = 0; r < k; ++r)
    if (!subsets_keep_connected(g, r)) return false;
  return true;
}

SuppressedKernel suppress_degree_two(const Multigraph& g) {
  SuppressedKernel out;
  std::vector<int> deg(g.numNodes());
  for (int n = 0; n < g.numNodes(); ++n) deg[n] = g.degree(n);
  out.kernelOf.assign(g.numNodes(), -1);
  for (int n = 0; n < g.numNodes(); ++n)
    if (deg[n] != 2) out.kernelOf[n] = out.kernel.addNode(g.nodes[n]);
  std::vector<bool> used(g.numEdges(), false);
  for (int b = 0; b < g.numNodes(); ++b) {
    if (out.kernelOf[b] < 0) continue;
    for (const Half& h0 : g.halvesAt(b)) {
      if (used[h0.e]) continue;
      // Walk through degree-2 nodes until the next branch node.
      std::vector<int> path;
      Half h = h0;
      int cur = b;
      while (true) {
        used[h.e] = true;
        path.push_back(h.e);
        int nxt = g.endOf(h, 1);
        if (out.kernelOf[nxt] >= 0) {
          Id eid = g.edges[path[0]].id;
          for (int pe : path) eid = std::min(eid, g.edges[pe].id);
          int ke = out.kernel.addEdgeIdx(eid, out.kernelOf[b], out.kernelOf[nxt]);
          (void)ke;
          out.kernelEdgePath.push_back(path);
          break;
        }
        // Continue along the unique other edge at a degree-2 node.
        Half cont{-1, 0};
        for (const Half& h2 : g.halvesAt(nxt))
          if (!(h2.e == h.e && h2.end == 1 - h.end)) cont = h2;
        if (cont.e < 0 || used[cont.e]) {  // closed back on itself
          Id eid = g.edges[path[0]].id;
          for (int pe : path) eid = std::min(eid, g.edges[pe].id);
          out.kernel.addEdgeIdx(eid, out.kernelOf[b], out.kernelOf[b]);
          out.kernelEdgePath.push_back(path);
          break;
        }
        h = cont;
        cur = nxt;
        (void)cur;
      }
    }
  }
  for (int e = 0; e < g.numEdges(); ++e)
    if (!used[e]) out.hasBranchlessCycle = true;
  return out;
}

bool is_parallel_graph(const Multigraph& g, std::pair<int, int>* branch) {
  if (g.numNodes() < 2 || !g.isConnected()) return false;
  for (const auto& e : g.edges)
    if (e.isLoop()) return false;
  std::vector<int> cand;
  for (int n = 0; n < g.numNodes(); ++n)
    if (g.degree(n) != 2) cand.push_back(n);
  if (cand.empty()) {
    // A bare cycle; branch vertices chosen as the two smallest ids.
    std::vector<int> byId(g.numNodes());
    std::iota(byId.begin(), byId.end(), 0);
    std::sort(byId.begin(), byId.end(), [&](int a, int b) { return g.nodes[a] < g.nodes[b]; });
    if (branch) *branch = {byId[0], byId[1]};
    return true;
  }
  if (cand.size() != 2) return false;
  int u = cand[0], w = cand[1];
  if (g.degree(u) != g.degree(w)) return false;
  // Every walk leaving u must run through degree-2 nodes straight to w.
  size_t covered = 0;
  for (const Half& h0 : g.halvesAt(u)) {
    Half h = h0;
    while (true) {
      ++covered;
      int nxt = g.endOf(h, 1);
      if (nxt == w) break;
      if (nxt == u || g.degree(nxt) != 2) return false;
      Half cont{-1, 0};
      for (const Half& h2 : g.halvesAt(nxt))
        if (!(h2.e == h.e && h2.end == 1 - h.end)) cont = h2;
      h = cont;
    }
  }
  if (covered != g.edges.size()) return false;
  if (branch) *branch = {u, w};
  return true;
}

bool is_parallel_with_branch(const Multigraph& g, int n) {
  std::pair<int, int> br;
  if (!is_parallel_graph(g, &br)) return false;
  bool cycle = true;
  for (int i = 0; i < g.numNodes(); ++i)
    if (g.degree(i) != 2) cycle = false;
  if (cycle) return true;
  return n == br.first || n == br.second;
}

namespace {

bool is_free_graph(const Multigraph& g) {
  if (!g.isConnected() || g.numNodes() == 0) return false;
  for (const auto& e : g.edges)
    if (e.isLoop()) return false;
  int d1 = 0, d3 = 0;
  for (int n = 0; n < g.numNodes(); ++n) {
    int d = g.degree(n);
    if (d >= 4) return false;
    if (d == 1) ++d1;
    if (d == 3) ++d3;
  }
  int cycles = g.numEdges() - g.numNodes() + 1;  // connected
  if (d3 == 0 && d1 == 2 && cycles == 0) return true;                  // path
  if (d3 == 0 && d1 == 0 && g.numEdges() == 0 && g.numNodes() == 1) return true;  // point
  if (d3 == 1 && d1 == 3 && cycles == 0) return true;                  // 3-star
  if (d3 == 1 && d1 == 1 && cycles == 1) return true;                  // cycle + path
  return false;
}

bool is_para_star(const Multigraph& g, int* center) {
  if (!g.isConnected() || g.numNodes() < 2) return false;
  for (const auto& e : g.edges)
    if (e.isLoop()) return false;
  for (int c = 0; c < g.numNodes(); ++c) {
    // Each component of g - c, together with c, must be a parallel graph
    // having c as a branch vertex.
    std::vector<int> comp(g.numNodes(), -1);
    int nc = 0;
    for (int s = 0; s < g.numNodes(); ++s) {
      if (s == c || comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
          int o = -1;
          if (e.u == n) o = e.v;
          else if (e.v == n) o = e.u;
          if (o >= 0 && o != c && comp[o] < 0) {
            comp[o] = nc;
            stack.push_back(o);
          }
        }
      }
      ++nc;
    }
    bool ok = nc >= 1;
    for (int k = 0; k < nc && ok; ++k) {
      Multigraph h;
      for (const auto& e : g.edges) {
        bool uin = (e.u == c) || comp[e.u] == k;
        bool vin = (e.v == c) || comp[e.v] == k;
        if (uin && vin) h.addEdge(e.id, g.nodes[e.u], g.nodes[e.v]);
      }
      int hc = h.nodeIndex(g.nodes[c]);
      if (hc < 0 || !is_parallel_with_branch(h, hc)) ok = false;
    }
    if (ok) {
      if (center) *center = c;
      return true;
    }
  }
  return false;
}

}  // namespace

GraphClass classify_graph(const Multigraph& g) {
  GraphClass out;
  // Subdivision of a 3-connected graph.
  if (g.isConnected() && g.numNodes() > 0) {
    bool minDeg2 = g.numEdges() > 0;
    for (int n = 0; n < g.numNodes(); ++n)
      if (g.degree(n) < 2) minDeg2 = false;
    if (minDeg2) {
      auto sk = suppress_degree_two(g);
      if (!sk.hasBranchlessCycle && sk.kernel.isSimple() && is_k_connected(sk.kernel, 3)) {
        out.subdiv3connected = true;
        out.kernel = sk.kernel;
        out.kernelOf = sk.kernelOf;
      }
    }
  }
  std::pair<int, int> br;
  if (is_parallel_graph(g, &br)) {
    out.parallel = true;
    out.branchVertices = {br.first, br.second};
  }
  out.freeGraph = is_free_graph(g);
  int center = -1;
  out.paraStar = is_para_star(g, &center);
  out.paraStarCenter = center;
  out.starOfParallel = out.paraStar && !is_k_connected(g, 2);
  using Tag = GraphClass::Tag;
  if (out.subdiv3connected) out.tag = Tag::Subdiv3Connected;
  else if (out.parallel) out.tag = Tag::ParallelGraph;
  else if (out.freeGraph) out.tag = Tag::FreeGraph;
  else if (out.starOfParallel) out.tag = Tag::StarOfParallel;
  else if (out.paraStar) out.tag = Tag::ParaStar;
  else out.tag = Tag::Other;
  return out;
}

Multigraph vertex_sum(const Multigraph& h1, const Id& v1, const Multigraph& h2, const Id& v2,
                      const std::vector<std::pair<Half, Half>>& psi) {
  int n1 = h1.nodeIndex(v1), n2 = h2.nodeIndex(v2);
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("vertex_sum: missing vertex");
  for (const auto& [a, b] : psi) {
    if (h1.endOf(a) != n1 || h2.endOf(b) != n2)
      throw std::invalid_argument("vertex_sum: psi half not at v");
    if (h1.edges[a.e].isLoop() || h2.edges[b.e].isLoop())
      throw std::invalid_argument("vertex_sum: loops at v unsupported");
  }
  if (psi.size() != h1.halvesAt(n1).size() || psi.size() != h2.halvesAt(n2).size())
    throw std::invalid_argument("vertex_sum: psi not a bijection");
  Multigraph out;
  for (int n = 0; n < h1.numNodes(); ++n)
    if (n != n1) out.addNode(h1.nodes[n]);
  for (int n = 0; n < h2.numNodes(); ++n) {
    if (n != n2) {
      if (out.nodeIndex(h2.nodes[n]) >= 0)
        throw std::invalid_argument("vertex_sum: id collision between sides");
      out.addNode(h2.nodes[n]);
    }
  }
  for (const auto& e : h1.edges)
    if (e.u != n1 && e.v != n1) out.addEdge(e.id, h1.nodes[e.u], h1.nodes[e.v]);
  for (const auto& e : h2.edges)
    if (e.u != n2 && e.v != n2) out.addEdge(e.id, h2.nodes[e.u], h2.nodes[e.v]);
  for (const auto& [a, b] : psi) {
    const Id& x = h1.nodes[h1.endOf(a, 1)];
    const Id& y = h2.nodes[h2.endOf(b, 1)];
    out.addEdge("s(" + h1.edges[a.e].id + "|" + h2.edges[b.e].id + ")", x, y);
  }
  return out;
}

std::string kuratowski_kind(const Multigraph& g, const std::vector<int>& edgeSubset,
                            std::vector<int>* branchVertices) {
  Multigraph sub = g.inducedByEdges(edgeSubset);
  if (!sub.isConnected()) return "";
  auto sk = suppress_degree_two(sub);
  if (sk.hasBranchlessCycle || !sk.kernel.isSimple()) return "";
  const Multigraph& k = sk.kernel;
  auto branchIds = [&]() {
    std::vector<int> out;
    for (int n = 0; n < sub.numNodes(); ++n)
      if (sk.kernelOf[n] >= 0) out.push_back(g.nodeIndex(sub.nodes[n]));
    return out;
  };
  if (k.numNodes() == 5 && k.numEdges() == 10) {
    for (int n = 0; n < 5; ++n)
      if (k.degree(n) != 4) return "";
    if (branchVertices) *branchVertices = branchIds();
    return "K5";
  }
  if (k.numNodes() == 6 && k.numEdges() == 9) {
    for (int n = 0; n < 6; ++n)
      if (k.degree(n) != 3) return "";
    // Bipartition check: classes from node 0.
    std::vector<int> side(6, -1);
    side[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (const auto& e : k.edges) {
        int o = -1;
        if (e.u == n) o = e.v;
        else if (e.v == n) o = e.u;
        if (o < 0) continue;
        if (side[o] < 0) {
          side[o] = 1 - side[n];
          stack.push_back(o);
        } else if (side[o] == side[n]) {
          return "";
        }
      }
    }
    if (branchVertices) *branchVertices = branchIds();
    return "K33";
  }
  return "";
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return std::min(a * b, cap + 1);
}

std::uint64_t factorial_sat(int n, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r = sat_mul(r, i, cap);
  return r;
}

}  // namespace

std::uint64_t rotation_count(const Multigraph& g, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int n = 0; n < g.numNodes(); ++n) {
    int d = g.degree(n);
    if (d >= 3) total = sat_mul(total, factorial_sat(d - 1, cap), cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

bool for_each_rotation(const Multigraph& g, std::uint64_t cap,
                       const std::function<bool(const GraphRotation&)>& fn) {
  if (rotation_count(g, cap) > cap) return false;
  GraphRotation r;
  r.rot.resize(g.numNodes());
  std::vector<std::vector<Half>> halves(g.numNodes());
  for (int n = 0; n < g.numNodes(); ++n) halves[n] = g.halvesAt(n);
  bool stop = false;
  std::function<void(int)> rec = [&](int n) {
    if (stop) return;
    if (n == g.numNodes()) {
      if (!fn(r)) stop = true;
      return;
    }
    auto& hs = halves[n];
    if (hs.size() <= 2) {
      r.rot[n] = hs;
      rec(n + 1);
      return;
    }
    // First half pinned; permute the rest (cyclic orders).
    std::vector<Half> rest(hs.begin() + 1, hs.end());
    std::sort(rest.begin(), rest.end());
    do {
      r.rot[n].clear();
      r.rot[n].push_back(hs[0]);
      r.rot[n].insert(r.rot[n].end(), rest.begin(), rest.end());
      rec(n + 1);
      if (stop) return;
    } while (std::next_permutation(rest.begin(), rest.end()));
  };
  rec(0);
  return true;
}

Multigraph make_complete(int n, const std::string& prefix) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.addNode(prefix + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.addEdgeIdx(prefix + std::to_string(i) + prefix + std::to_string(j), i, j);
  return g;
}

Multigraph make_complete_bipartite(int a, int b) {
  Multigraph g;
  for (int i = 0; i < a; ++i) g.addNode("a" + std::to_string(i));
  for (int j = 0; j < b; ++j) g.addNode("b" + std::to_string(j));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      g.addEdgeIdx("a" + std::to_string(i) + "b" + std::to_string(j), i, a + j);
  return g;
}

Multigraph make_cycle(int n, const std::string& prefix) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.addNode(prefix + std::to_string(i));
  for (int i = 0; i < n; ++i)
    g.addEdgeIdx(prefix + std::to_string(i) + prefix + std::to_string((i + 1) % n), i,
                 (i + 1) % n);
  return g;
}

Multigraph make_petersen() {
  Multigraph g;
  for (int i = 0; i < 10; ++i) g.addNode("p" + std::to_string(i));
  auto e = [&](int i, int j) {
    g.addEdgeIdx("p" + std::to_string(std::min(i, j)) + "p" + std::to_string(std::max(i, j)), i,
                 j);
  };
  for (int i = 0; i < 5; ++i) e(i, (i + 1) % 5);        // outer cycle
  for (int i = 0; i < 5; ++i) e(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  for (int i = 0; i < 5; ++i) e(i, 5 + i);              // spokes
  return g;
}

}  // namespace emb3
