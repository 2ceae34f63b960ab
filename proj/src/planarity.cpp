#include "emb3/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <set>

namespace emb3 {

namespace {

typedef boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                              boost::property<boost::vertex_index_t, int>,
                              boost::property<boost::edge_index_t, int>>
    BoostGraph;
typedef boost::graph_traits<BoostGraph>::edge_descriptor BoostEdge;

// Every edge of g is subdivided (loops twice), yielding a simple graph the
// Boyer-Myrvold implementation accepts. Boost edge index -> (g edge, part),
// part 0 = half at u, part 1 = half at v, part 2 = loop middle.
struct Subdivided {
  BoostGraph bg;
  std::vector<std::pair<int, int>> edgeOrigin;
};

Subdivided subdivide_all(const Multigraph& g) {
  Subdivided s;
  int extra = 0;
  for (const auto& e : g.edges) extra += e.isLoop() ? 2 : 1;
  s.bg = BoostGraph(g.numNodes() + extra);
  int next = g.numNodes();
  int ei = 0;
  auto add = [&](int a, int b, int orig, int part) {
    boost::add_edge(a, b, ei++, s.bg);
    s.edgeOrigin.push_back({orig, part});
  };
  for (int e = 0; e < g.numEdges(); ++e) {
    const auto& ge = g.edges[e];
    if (ge.isLoop()) {
      int m1 = next++, m2 = next++;
      add(ge.u, m1, e, 0);
      add(m1, m2, e, 2);
      add(m2, ge.v, e, 1);
    } else {
      int m = next++;
      add(ge.u, m, e, 0);
      add(m, ge.v, e, 1);
    }
  }
  return s;
}

// Edge descriptors of the subdivided graph must not outlive it, so both
// outputs are translated to original-edge terms here: the embedding as
// (edge, part) per original node, the Kuratowski set as original edge
// indices.
bool boost_planar(const Multigraph& g,
                  std::vector<std::vector<std::pair<int, int>>>* embedding,
                  std::vector<int>* kuratowskiEdges) {
  Subdivided s = subdivide_all(g);
  std::vector<std::vector<BoostEdge>> emb(boost::num_vertices(s.bg));
  std::vector<BoostEdge> kur;
  bool planar;
  if (kuratowskiEdges) {
    planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = s.bg,
        boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(
            emb.begin(), boost::get(boost::vertex_index, s.bg)),
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  } else {
    planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = s.bg,
        boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(
            emb.begin(), boost::get(boost::vertex_index, s.bg)));
  }
  auto eidx = boost::get(boost::edge_index, s.bg);
  if (embedding) {
    embedding->assign(g.numNodes(), {});
    for (int n = 0; n < g.numNodes(); ++n)
      for (const BoostEdge& be : emb[n]) (*embedding)[n].push_back(s.edgeOrigin[eidx[be]]);
  }
  if (kuratowskiEdges) {
    std::set<int> edgeSet;
    for (const BoostEdge& be : kur) edgeSet.insert(s.edgeOrigin[eidx[be]].first);
    kuratowskiEdges->assign(edgeSet.begin(), edgeSet.end());
  }
  return planar;
}

}  // namespace

std::optional<GraphRotation> planar_rotation_of_graph(const Multigraph& g) {
  std::vector<std::vector<std::pair<int, int>>> emb;
  if (!boost_planar(g, &emb, nullptr)) return std::nullopt;
  GraphRotation r;
  r.rot.resize(g.numNodes());
  for (int n = 0; n < g.numNodes(); ++n) {
    for (auto [orig, part] : emb[n]) {
      assert(part != 2);
      r.rot[n].push_back(Half{orig, part});
    }
  }
  // Self-check: the emitted rotation must trace spheres.
  TracedSurface t = trace_faces(g, r);
  if (!t.planar()) throw std::logic_error("planar embedding failed trace self-check");
  return r;
}

KuratowskiWitness kuratowski_witness(const Multigraph& g) {
  std::vector<int> edges;
  if (boost_planar(g, nullptr, &edges)) throw std::invalid_argument("graph is planar");

  KuratowskiWitness w;
  w.kind = kuratowski_kind(g, edges, &w.branchVertices);
  if (w.kind.empty()) {
    // Fall back to greedy minimization: drop edges while non-planarity holds.
    auto nonplanar = [&](const std::vector<int>& es) {
      Multigraph sub = g.inducedByEdges(es);
      return !boost_planar(sub, nullptr, nullptr);
    };
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (size_t i = 0; i < edges.size(); ++i) {
        std::vector<int> trial = edges;
        trial.erase(trial.begin() + i);
        if (nonplanar(trial)) {
          edges = trial;
          shrunk = true;
          break;
        }
      }
    }
    w.kind = kuratowski_kind(g, edges, &w.branchVertices);
    if (w.kind.empty()) throw std::logic_error("kuratowski extraction failed verification");
  }
  w.edges = edges;
  return w;
}

}  // namespace emb3
