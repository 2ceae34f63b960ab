#include "emb3/jsonio.hpp"

#include <cstdint>
#include <fstream>
#include <map>

namespace emb3 {

using nlohmann::json;

json complex_to_json(const Complex2& c) {
  json j;
  j["vertices"] = c.vertices;
  j["edges"] = json::array();
  for (const auto& e : c.edges)
    j["edges"].push_back({{"id", e.id},
                          {"tail", c.vertices[e.tail]},
                          {"head", c.vertices[e.head]}});
  j["faces"] = json::array();
  for (const auto& f : c.faces) {
    json trail = json::array();
    for (const auto& t : f.trail)
      trail.push_back({{"edge", c.edges[t.edge].id}, {"forward", t.forward}});
    j["faces"].push_back({{"id", f.id}, {"trail", trail}});
  }
  return j;
}

std::optional<Complex2> complex_from_json(const json& j, Diagnostics& diag) {
  if (!j.is_object()) {
    diag.errors.push_back("top-level JSON value must be an object");
    return std::nullopt;
  }
  Complex2 raw;
  std::map<Id, int> vtx;
  auto vertex = [&](const Id& id) {
    auto it = vtx.find(id);
    if (it != vtx.end()) return it->second;
    int v = static_cast<int>(raw.vertices.size());
    raw.vertices.push_back(id);
    vtx[id] = v;
    return v;
  };
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) {
      diag.errors.push_back("\"vertices\" must be an array of ids");
      return std::nullopt;
    }
    for (const auto& v : j["vertices"]) {
      if (!v.is_string()) {
        diag.errors.push_back("vertex ids must be strings");
        return std::nullopt;
      }
      // Duplicates are kept; validate_complex reports them.
      raw.vertices.push_back(v.get<Id>());
      vtx.emplace(v.get<Id>(), static_cast<int>(raw.vertices.size()) - 1);
    }
  }
  std::map<Id, int> edg;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) {
      diag.errors.push_back("\"edges\" must be an array");
      return std::nullopt;
    }
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("id") || !e.contains("tail") ||
          !e.contains("head")) {
        diag.errors.push_back("each edge needs \"id\", \"tail\", \"head\"");
        return std::nullopt;
      }
      EdgeC ec;
      ec.id = e["id"].get<Id>();
      ec.tail = vertex(e["tail"].get<Id>());
      ec.head = vertex(e["head"].get<Id>());
      edg.emplace(ec.id, static_cast<int>(raw.edges.size()));
      raw.edges.push_back(ec);
    }
  }
  // Shorthand faces may mint new edges; keep ids out of the way of explicit
  // ones by reusing the "min-max" convention.
  auto inferredEdge = [&](const Id& a, const Id& b) {
    auto [lo, hi] = std::minmax(a, b);
    Id id = lo + "-" + hi;
    auto it = edg.find(id);
    if (it != edg.end()) return it->second;
    EdgeC ec;
    ec.id = id;
    ec.tail = vertex(lo);
    ec.head = vertex(hi);
    int e = static_cast<int>(raw.edges.size());
    raw.edges.push_back(ec);
    edg[id] = e;
    return e;
  };
  if (j.contains("faces")) {
    if (!j["faces"].is_array()) {
      diag.errors.push_back("\"faces\" must be an array");
      return std::nullopt;
    }
    int shorthand = 0;
    for (const auto& f : j["faces"]) {
      FaceC fc;
      if (f.is_array()) {
        // Vertex-cycle shorthand.
        if (f.size() < 3) {
          diag.errors.push_back("shorthand face needs at least 3 vertices");
          return std::nullopt;
        }
        std::vector<Id> cyc;
        for (const auto& v : f) {
          if (!v.is_string()) {
            diag.errors.push_back("shorthand face entries must be vertex ids");
            return std::nullopt;
          }
          cyc.push_back(v.get<Id>());
        }
        fc.id = "f" + std::to_string(shorthand++);
        for (size_t i = 0; i < cyc.size(); ++i) {
          const Id& a = cyc[i];
          const Id& b = cyc[(i + 1) % cyc.size()];
          int e = inferredEdge(a, b);
          fc.trail.push_back(Traversal{e, raw.edges[e].tail == vtx[a]});
        }
      } else if (f.is_object() && f.contains("id") && f.contains("trail") &&
                 f["trail"].is_array()) {
        fc.id = f["id"].get<Id>();
        for (const auto& t : f["trail"]) {
          if (!t.is_object() || !t.contains("edge")) {
            diag.errors.push_back("each traversal needs \"edge\"");
            return std::nullopt;
          }
          Id eid = t["edge"].get<Id>();
          auto it = edg.find(eid);
          if (it == edg.end()) {
            diag.errors.push_back("face " + fc.id + " references unknown edge " + eid);
            return std::nullopt;
          }
          bool fwd = t.value("forward", true);
          fc.trail.push_back(Traversal{it->second, fwd});
        }
      } else {
        diag.errors.push_back("each face must be an object with \"id\"+\"trail\" or a vertex array");
        return std::nullopt;
      }
      raw.faces.push_back(fc);
    }
  }
  return validate_complex(raw, diag);
}

std::optional<Complex2> complex_from_file(const std::string& path, Diagnostics& diag) {
  std::ifstream in(path);
  if (!in) {
    diag.errors.push_back("cannot open file: " + path);
    return std::nullopt;
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    diag.errors.push_back("invalid JSON in file: " + path);
    return std::nullopt;
  }
  return complex_from_json(j, diag);
}

std::string complex_hash(const Complex2& c) {
  std::string s = complex_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace emb3
