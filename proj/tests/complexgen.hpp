#pragma once
// Seeded random simplicial complexes for property tests: random triangle sets
// with every edge in at most three faces (so rotator choices stay small).

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "emb3/complex.hpp"

inline emb3::Complex2 random_3bounded_complex(std::mt19937& rng, int maxExtraVertices = 3,
                                              int maxFaces = 7) {
  using emb3::Id;
  int nv = 4 + static_cast<int>(rng() % (maxExtraVertices + 1));
  int want = 3 + static_cast<int>(rng() % std::max(1, maxFaces - 2));
  std::map<std::pair<int, int>, int> faceDeg;
  std::set<std::array<int, 3>> used;
  std::vector<std::array<Id, 3>> tris;
  for (int attempt = 0; attempt < 300 && static_cast<int>(tris.size()) < want; ++attempt) {
    std::array<int, 3> t{static_cast<int>(rng() % nv), static_cast<int>(rng() % nv),
                         static_cast<int>(rng() % nv)};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2] || used.count(t)) continue;
    std::array<std::pair<int, int>, 3> sides{
        std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}};
    bool ok = true;
    for (auto s : sides)
      if (faceDeg[s] >= 3) ok = false;
    if (!ok) continue;
    used.insert(t);
    for (auto s : sides) ++faceDeg[s];
    tris.push_back({"v" + std::to_string(t[0]), "v" + std::to_string(t[1]),
                    "v" + std::to_string(t[2])});
  }
  return emb3::simplicial_from_triangles(tris);
}

// Every simplicial complex on 5 labelled vertices with at most maxFaces
// faces: all subsets of the ten possible triangles.
inline std::vector<emb3::Complex2> all_complexes_on_5_vertices(int maxFaces) {
  using emb3::Id;
  std::vector<std::array<Id, 3>> all;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c)
        all.push_back({"v" + std::to_string(a), "v" + std::to_string(b),
                       "v" + std::to_string(c)});
  std::vector<emb3::Complex2> out;
  for (unsigned mask = 1; mask < (1u << all.size()); ++mask) {
    if (std::popcount(mask) > maxFaces) continue;
    std::vector<std::array<Id, 3>> tris;
    for (size_t i = 0; i < all.size(); ++i)
      if (mask & (1u << i)) tris.push_back(all[i]);
    out.push_back(emb3::simplicial_from_triangles(tris));
  }
  return out;
}
