#pragma once
// Test-side oracles, independent of the decision pipeline: existence of a
// planar rotation system by exhaustive enumeration. The pruned variant fixes
// cyclic orders edge by edge and rejects as soon as some vertex whose
// incident edges are all fixed has a non-spherical link complex; this visits
// every rotation system not excluded by a failed prefix, so it is exact.

#include <algorithm>
#include <optional>

#include "emb3/rotation.hpp"

namespace emb3::testing {

inline std::optional<bool> oracle_prs_exists_plain(const Complex2& c, long long cap) {
  bool found = false;
  bool complete = for_each_rotation_system(c, cap, [&](const RotationSystem& s) {
    if (is_planar_rotation_system(c, s).planar) {
      found = true;
      return false;
    }
    return true;
  });
  if (!complete) return std::nullopt;
  return found;
}

inline std::optional<bool> oracle_prs_exists(const Complex2& c, long long nodeCap) {
  RotationSystem s = default_rotation(c);
  std::vector<int> wild;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
    if (s.sigma[e].size() >= 3) wild.push_back(e);

  // Fix the most-constrained edges (largest rotators) first so the vertices
  // around them complete early and their link checks prune the search.
  std::stable_sort(wild.begin(), wild.end(), [&](int a, int b) {
    return s.sigma[a].size() > s.sigma[b].size();
  });

  // Vertex v can be checked once every wild edge at v is fixed.
  int nv = static_cast<int>(c.vertices.size());
  std::vector<int> lastWild(nv, -1);
  for (size_t i = 0; i < wild.size(); ++i) {
    const EdgeC& e = c.edges[wild[i]];
    lastWild[e.tail] = std::max(lastWild[e.tail], static_cast<int>(i));
    lastWild[e.head] = std::max(lastWild[e.head], static_cast<int>(i));
  }
  std::vector<std::vector<int>> readyAt(wild.size() + 1);
  for (int v = 0; v < nv; ++v) readyAt[lastWild[v] + 1].push_back(v);

  auto linkPlanar = [&](int v) {
    LinkGraph lg = link_graph(c, v);
    return trace_faces(lg.g, induced_link_rotation(c, s, lg)).planar();
  };
  for (int v : readyAt[0])
    if (!linkPlanar(v)) return false;

  long long nodes = 0;
  bool capped = false;
  auto cmp = [](const SigmaEntry& a, const SigmaEntry& b) {
    return std::tuple(a.face, a.pos) < std::tuple(b.face, b.pos);
  };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (capped) return false;
    if (i == wild.size()) return true;
    auto& se = s.sigma[wild[i]];
    std::sort(se.begin(), se.end(), cmp);
    std::sort(se.begin() + 1, se.end(), cmp);
    do {
      if (++nodes > nodeCap) {
        capped = true;
        return false;
      }
      bool ok = true;
      for (int v : readyAt[i + 1])
        if (!linkPlanar(v)) {
          ok = false;
          break;
        }
      if (ok && rec(i + 1)) return true;
    } while (std::next_permutation(se.begin() + 1, se.end(), cmp));
    return false;
  };
  bool found = rec(0);
  if (capped) return std::nullopt;
  return found;
}

}  // namespace emb3::testing
