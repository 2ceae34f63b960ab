#include "emb3/minors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace emb3 {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

Complex2 checked(Complex2 raw, const char* op) {
  Diagnostics d;
  auto out = validate_complex(raw, d);
  if (!out)
    throw std::invalid_argument(std::string(op) + " produced an invalid complex: " +
                                (d.errors.empty() ? "unknown" : d.errors[0]));
  return *out;
}

int need_edge(const Complex2& c, const Id& e, const char* op) {
  int i = c.edgeIndex(e);
  if (i < 0) fail(std::string(op) + ": no edge " + e);
  return i;
}

int need_face(const Complex2& c, const Id& f, const char* op) {
  int i = c.faceIndex(f);
  if (i < 0) fail(std::string(op) + ": no face " + f);
  return i;
}

int need_vertex(const Complex2& c, const Id& v, const char* op) {
  int i = c.vertexIndex(v);
  if (i < 0) fail(std::string(op) + ": no vertex " + v);
  return i;
}

Id fresh_id(const std::set<Id>& taken, Id candidate) {
  while (taken.count(candidate)) candidate += "'";
  return candidate;
}

// Removes cyclically adjacent traversal pairs of the same edge in opposite
// directions, repeatedly.
void omit_opposite_adjacent(std::vector<Traversal>& trail) {
  bool changed = true;
  while (changed && trail.size() >= 2) {
    changed = false;
    int n = static_cast<int>(trail.size());
    for (int i = 0; i < n; ++i) {
      const Traversal& a = trail[i];
      const Traversal& b = trail[(i + 1) % n];
      if (a.edge == b.edge && a.forward != b.forward) {
        if (i + 1 < n) {
          trail.erase(trail.begin() + i, trail.begin() + i + 2);
        } else {
          trail.erase(trail.begin() + n - 1);
          trail.erase(trail.begin());
        }
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

Complex2 contract_edge(const Complex2& c, const Id& eid) {
  int e = need_edge(c, eid, "contract_edge");
  if (c.edges[e].isLoop()) fail("contract_edge: " + eid + " is a loop");
  int keep = c.edges[e].tail, drop = c.edges[e].head;
  if (c.vertices[drop] < c.vertices[keep]) std::swap(keep, drop);

  Complex2 raw;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
    if (v != drop) raw.addVertex(c.vertices[v]);
  auto mapv = [&](int v) { return v == drop ? keep : v; };
  std::vector<int> edgeMap(c.edges.size(), -1);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    if (i == e) continue;
    edgeMap[i] = static_cast<int>(raw.edges.size());
    raw.addEdge(c.edges[i].id, c.vertices[mapv(c.edges[i].tail)],
                c.vertices[mapv(c.edges[i].head)]);
  }
  for (const auto& f : c.faces) {
    FaceC nf;
    nf.id = f.id;
    for (const Traversal& t : f.trail)
      if (t.edge != e) nf.trail.push_back(Traversal{edgeMap[t.edge], t.forward});
    if (nf.trail.empty()) continue;  // a face of the contracted edge alone
    raw.faces.push_back(nf);
  }
  return checked(std::move(raw), "contract_edge");
}

Complex2 delete_face(const Complex2& c, const Id& fid, bool cleanup) {
  int f = need_face(c, fid, "delete_face");
  std::set<int> trailEdges;
  for (const Traversal& t : c.faces[f].trail) trailEdges.insert(t.edge);

  Complex2 raw = c;
  raw.faces.erase(raw.faces.begin() + f);
  if (!cleanup) return checked(std::move(raw), "delete_face");

  // Drop edges of the trail now in no face, then vertices of the trail left
  // incident to nothing.
  std::set<int> dropEdges;
  for (int e : trailEdges) {
    bool used = false;
    for (const auto& g : raw.faces)
      for (const Traversal& t : g.trail)
        if (t.edge == e) used = true;
    if (!used) dropEdges.insert(e);
  }
  std::set<int> touchedVertices;
  for (int e : dropEdges) {
    touchedVertices.insert(c.edges[e].tail);
    touchedVertices.insert(c.edges[e].head);
  }
  Complex2 out;
  std::vector<int> edgeMap(c.edges.size(), -1);
  std::set<int> keepVertices;
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    if (dropEdges.count(i)) continue;
    keepVertices.insert(c.edges[i].tail);
    keepVertices.insert(c.edges[i].head);
  }
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
    if (!touchedVertices.count(v) || keepVertices.count(v)) out.addVertex(c.vertices[v]);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    if (dropEdges.count(i)) continue;
    edgeMap[i] = static_cast<int>(out.edges.size());
    out.addEdge(c.edges[i].id, c.vertices[c.edges[i].tail], c.vertices[c.edges[i].head]);
  }
  for (const auto& g : raw.faces) {
    FaceC nf;
    nf.id = g.id;
    for (const Traversal& t : g.trail) nf.trail.push_back(Traversal{edgeMap[t.edge], t.forward});
    out.faces.push_back(nf);
  }
  return checked(std::move(out), "delete_face");
}

Complex2 contract_face(const Complex2& c, const Id& fid) {
  int f = need_face(c, fid, "contract_face");
  const auto& trail = c.faces[f].trail;
  if (trail.size() > 2) fail("contract_face: face " + fid + " has size > 2");

  Complex2 raw = c;
  raw.faces.erase(raw.faces.begin() + f);

  if (trail.size() == 1) {
    // The unique edge is a loop; remove it from every other trail.
    int l = trail[0].edge;
    if (!c.edges[l].isLoop())
      throw std::logic_error("size-one face over a non-loop edge");
    for (auto& g : raw.faces) {
      std::vector<Traversal> nt;
      for (const Traversal& t : g.trail)
        if (t.edge != l) nt.push_back(t);
      g.trail = nt;
    }
    raw.edges.erase(raw.edges.begin() + l);
    for (auto& g : raw.faces)
      for (auto& t : g.trail)
        if (t.edge > l) --t.edge;
  } else if (trail.size() == 2) {
    int e1 = trail[0].edge, e2 = trail[1].edge;
    if (e1 == e2) fail("contract_face: degenerate face " + fid);
    if (c.edges[e1].isLoop() || c.edges[e2].isLoop())
      fail("contract_face: size-two face with a loop edge");
    // Keep the lexicographically smaller edge id.
    Traversal ka = trail[0], kb = trail[1];
    if (c.edges[e2].id < c.edges[e1].id) std::swap(ka, kb);
    int keep = ka.edge, drop = kb.edge;
    // Walking the face, ka runs a->b and kb runs b->a: direction x of the
    // dropped edge maps to keep's direction (x == kb.forward ? !ka.forward
    // : ka.forward).
    for (auto& g : raw.faces)
      for (auto& t : g.trail)
        if (t.edge == drop)
          t = Traversal{keep, t.forward == kb.forward ? !ka.forward : ka.forward};
    raw.edges.erase(raw.edges.begin() + drop);
    for (auto& g : raw.faces)
      for (auto& t : g.trail)
        if (t.edge > drop) --t.edge;
  } else {
    fail("contract_face: empty face");
  }

  for (auto& g : raw.faces) omit_opposite_adjacent(g.trail);
  std::vector<FaceC> kept;
  for (auto& g : raw.faces)
    if (!g.trail.empty()) kept.push_back(g);
  raw.faces = kept;

  // Drop cells no longer incident to anything (mirrors face deletion
  // cleanup; a contracted size-one face may leave its loop vertex bare).
  Complex2 out;
  std::set<int> usedV;
  for (const auto& e : raw.edges) {
    usedV.insert(e.tail);
    usedV.insert(e.head);
  }
  // Vertices keep membership if still used by an edge or were not touched.
  for (int v = 0; v < static_cast<int>(raw.vertices.size()); ++v)
    out.addVertex(raw.vertices[v]);
  out.edges = raw.edges;
  out.faces = raw.faces;
  return checked(std::move(out), "contract_face");
}

Complex2 split_vertex(const Complex2& c, const Id& vid) {
  int v = need_vertex(c, vid, "split_vertex");
  LinkGraph lg = link_graph(c, v);
  if (lg.g.numNodes() == 0) return delete_isolated_vertex(c, vid);
  std::vector<int> comp = lg.g.componentOf();
  int ncomp = lg.g.componentCount();
  if (ncomp == 1) return c;

  // Order components by their smallest (edge id, end).
  std::vector<std::pair<std::pair<Id, int>, int>> mins;
  {
    std::map<int, std::pair<Id, int>> best;
    for (int n = 0; n < lg.g.numNodes(); ++n) {
      std::pair<Id, int> key{c.edges[lg.nodeEdge[n]].id, lg.nodeEnd[n]};
      auto it = best.find(comp[n]);
      if (it == best.end() || key < it->second) best[comp[n]] = key;
    }
    for (auto& [cc, key] : best) mins.push_back({key, cc});
    std::sort(mins.begin(), mins.end());
  }
  std::vector<int> copyOf(ncomp, -1);
  std::set<Id> taken(c.vertices.begin(), c.vertices.end());
  std::vector<Id> copyIds;
  for (int i = 0; i < ncomp; ++i) {
    Id id = fresh_id(taken, vid + "." + std::to_string(i));
    taken.insert(id);
    copyIds.push_back(id);
    copyOf[mins[i].second] = i;
  }

  Complex2 raw;
  for (int u = 0; u < static_cast<int>(c.vertices.size()); ++u)
    if (u != v) raw.addVertex(c.vertices[u]);
  for (const Id& id : copyIds) raw.addVertex(id);
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    Id tail = c.vertices[c.edges[e].tail];
    Id head = c.vertices[c.edges[e].head];
    if (c.edges[e].tail == v) tail = copyIds[copyOf[comp[lg.nodeOfEnd(e, 0)]]];
    if (c.edges[e].head == v) head = copyIds[copyOf[comp[lg.nodeOfEnd(e, 1)]]];
    raw.addEdge(c.edges[e].id, tail, head);
  }
  raw.faces = c.faces;
  return checked(std::move(raw), "split_vertex");
}

Complex2 topo_delete_edge(const Complex2& c, const Id& eid) {
  int e = need_edge(c, eid, "topo_delete_edge");
  std::vector<int> faces = c.facesAt(e);

  Complex2 raw;
  for (const auto& v : c.vertices) raw.addVertex(v);
  std::set<Id> taken;
  for (const auto& ed : c.edges) taken.insert(ed.id);
  std::vector<int> edgeMap(c.edges.size(), -1);
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
    if (i == e) continue;
    edgeMap[i] = static_cast<int>(raw.edges.size());
    raw.addEdge(c.edges[i].id, c.vertices[c.edges[i].tail], c.vertices[c.edges[i].head]);
  }
  std::map<int, int> copyForFace;  // face index -> new edge index
  for (size_t k = 0; k < faces.size(); ++k) {
    Id id = fresh_id(taken, eid + "." + std::to_string(k));
    taken.insert(id);
    copyForFace[faces[k]] = static_cast<int>(raw.edges.size());
    raw.addEdge(id, c.vertices[c.edges[e].tail], c.vertices[c.edges[e].head]);
  }
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
    FaceC nf;
    nf.id = c.faces[f].id;
    for (const Traversal& t : c.faces[f].trail)
      nf.trail.push_back(Traversal{t.edge == e ? copyForFace[f] : edgeMap[t.edge], t.forward});
    raw.faces.push_back(nf);
  }
  // Vertices of a face-degree-0 edge may become isolated; the paper keeps
  // them (no implicit cleanup beyond the edge itself).
  return checked(std::move(raw), "topo_delete_edge");
}

Complex2 delete_isolated_vertex(const Complex2& c, const Id& vid) {
  int v = need_vertex(c, vid, "delete_isolated_vertex");
  if (c.vertexDegree(v) != 0) fail("delete_isolated_vertex: " + vid + " has incident edges");
  Complex2 raw = c;
  raw.vertices.erase(raw.vertices.begin() + v);
  for (auto& e : raw.edges) {
    if (e.tail > v) --e.tail;
    if (e.head > v) --e.head;
  }
  return checked(std::move(raw), "delete_isolated_vertex");
}

Complex2 apply_script(const Complex2& c, const MinorScript& script, ScriptTrace* trace) {
  Complex2 cur = c;
  if (trace) {
    trace->S.clear();
    trace->S.push_back(measures(cur).S);
  }
  for (size_t i = 0; i < script.ops.size(); ++i) {
    const MinorOp& op = script.ops[i];
    try {
      switch (op.kind) {
        case MinorOp::Kind::ContractEdge: cur = contract_edge(cur, op.cell); break;
        case MinorOp::Kind::DeleteFace: cur = delete_face(cur, op.cell); break;
        case MinorOp::Kind::ContractFace: cur = contract_face(cur, op.cell); break;
        case MinorOp::Kind::SplitVertex: cur = split_vertex(cur, op.cell); break;
        case MinorOp::Kind::TopoDeleteEdge: cur = topo_delete_edge(cur, op.cell); break;
        case MinorOp::Kind::DeleteIsolatedVertex:
          cur = delete_isolated_vertex(cur, op.cell);
          break;
      }
    } catch (const std::invalid_argument& ex) {
      fail("script step " + std::to_string(i) + ": " + ex.what());
    }
    if (trace) trace->S.push_back(measures(cur).S);
  }
  return cur;
}

namespace {

const std::pair<MinorOp::Kind, const char*> kOpNames[] = {
    {MinorOp::Kind::ContractEdge, "contract-edge"},
    {MinorOp::Kind::DeleteFace, "delete-face"},
    {MinorOp::Kind::ContractFace, "contract-face"},
    {MinorOp::Kind::SplitVertex, "split-vertex"},
    {MinorOp::Kind::TopoDeleteEdge, "topo-delete-edge"},
    {MinorOp::Kind::DeleteIsolatedVertex, "delete-isolated-vertex"},
};

}  // namespace

nlohmann::json script_to_json(const MinorScript& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const MinorOp& op : s.ops) {
    const char* name = nullptr;
    for (auto& [k, n] : kOpNames)
      if (k == op.kind) name = n;
    j.push_back({{"op", name}, {"cell", op.cell}});
  }
  return j;
}

std::optional<MinorScript> script_from_json(const nlohmann::json& j, Diagnostics& diag) {
  if (!j.is_array()) {
    diag.errors.push_back("script must be a JSON array of ops");
    return std::nullopt;
  }
  MinorScript s;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("op") || !item.contains("cell")) {
      diag.errors.push_back("each script op needs \"op\" and \"cell\"");
      return std::nullopt;
    }
    std::string name = item["op"].get<std::string>();
    bool found = false;
    for (auto& [k, n] : kOpNames)
      if (name == n) {
        s.ops.push_back(MinorOp{k, item["cell"].get<Id>()});
        found = true;
      }
    if (!found) {
      diag.errors.push_back("unknown script op: " + name);
      return std::nullopt;
    }
  }
  return s;
}

}  // namespace emb3
