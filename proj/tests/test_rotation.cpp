#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "emb3/catalog.hpp"
#include "emb3/homology.hpp"
#include "emb3/rotation.hpp"
#include "oracle.hpp"

using namespace emb3;
using emb3::testing::oracle_prs_exists;
using emb3::testing::oracle_prs_exists_plain;

TEST_CASE("sphere triangulations have a unique planar rotation system") {
  for (const char* name : {"tetrahedron", "octahedron", "icosahedron"}) {
    Complex2 c = gen(name);
    CHECK(rotation_system_count(c, 1000) == 1);  // all face-degrees are 2
    RotationSystem s = default_rotation(c);
    CHECK(valid_rotation(c, s));
    CHECK(is_planar_rotation_system(c, s).planar);

    auto ls = local_surfaces(c, s);
    REQUIRE(ls.size() == 2);  // inside and outside
    for (const auto& surf : ls) {
      CHECK(surf.genus() == 0);
      CHECK(surf.F == static_cast<long long>(c.faces.size()));
    }
    auto rep = euler_identity_report(c, s, 2);
    CHECK(rep.lhs == 0);
    CHECK(rep.equality);
    CHECK(rep.nullhomologousAtP);
  }
}

TEST_CASE("tetrahedron local surfaces and dual counts by hand") {
  Complex2 c = gen("tetrahedron");
  RotationSystem s = default_rotation(c);
  auto ls = local_surfaces(c, s);
  REQUIRE(ls.size() == 2);
  for (const auto& surf : ls) {
    CHECK(surf.V == 4);
    CHECK(surf.E == 6);
    CHECK(surf.F == 4);
  }
  DualComplex d = dual_complex(c, s);
  CHECK(d.complex.vertices.size() == 2);
  CHECK(d.complex.edges.size() == 4);
  CHECK(d.complex.faces.size() == 6);
  CHECK(d.complex.reasonable);
  // Every dual face comes from a face-degree-2 edge, so has trail length 2.
  for (const auto& f : d.complex.faces) CHECK(f.trail.size() == 2);
  CHECK(valid_rotation(d.complex, d.sigma));
}

TEST_CASE("torus triangulation: planar system, two genus-1 local surfaces") {
  Complex2 c = gen("torus");
  CHECK(rotation_system_count(c, 10) == 1);
  RotationSystem s = default_rotation(c);
  CHECK(is_planar_rotation_system(c, s).planar);
  auto ls = local_surfaces(c, s);
  REQUIRE(ls.size() == 2);
  for (const auto& surf : ls) CHECK(surf.genus() == 1);
  auto rep = euler_identity_report(c, s, 2);
  CHECK(rep.lhs == -2);
  CHECK_FALSE(rep.equality);
  CHECK_FALSE(rep.nullhomologousAtP);
}

TEST_CASE("vertex-clone bijection: link faces count local-surface vertices") {
  for (const char* name :
       {"tetrahedron", "octahedron", "torus", "cone-K4", "cone-K5", "delta2",
        "moebius-min-555", "octahedron-obstruction-2"}) {
    Complex2 c = gen(name);
    for_each_rotation_system(c, 50, [&](const RotationSystem& s) {
      bool planar = is_planar_rotation_system(c, s).planar;
      auto ls = local_surfaces(c, s);
      long long cloneTotal = 0;
      for (const auto& surf : ls) {
        // The clone table realizes the vertex bijection exactly when every
        // link complex traces spheres.
        if (planar) CHECK(surf.V == static_cast<long long>(surf.vertexClones.size()));
        cloneTotal += static_cast<long long>(surf.vertexClones.size());
      }
      long long linkFaces = 0;
      for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
        LinkGraph lg = link_graph(c, v);
        TracedSurface t = trace_faces(lg.g, induced_link_rotation(c, s, lg));
        for (const auto& f : t.faces)
          if (!f.empty()) ++linkFaces;
      }
      CHECK(cloneTotal == linkFaces);
      return true;
    });
  }
}

TEST_CASE("reversing sigma at one edge reverses both induced rotators") {
  Complex2 c = gen("cone-K4");
  RotationSystem s = default_rotation(c);
  // Pick a cone edge: face degree 3.
  int e = -1;
  for (int i = 0; i < static_cast<int>(c.edges.size()); ++i)
    if (c.faceDegree(i) == 3) e = i;
  REQUIRE(e >= 0);
  RotationSystem r = s;
  std::reverse(r.sigma[e].begin(), r.sigma[e].end());
  for (int endvertex : {c.edges[e].tail, c.edges[e].head}) {
    LinkGraph lg = link_graph(c, endvertex);
    GraphRotation a = induced_link_rotation(c, s, lg);
    GraphRotation b = induced_link_rotation(c, r, lg);
    int n = lg.nodeOfEnd(e, c.edges[e].tail == endvertex ? 0 : 1);
    auto enc = [](const std::vector<Half>& hs) {
      std::vector<int> v;
      for (const Half& h : hs) v.push_back(2 * h.e + h.end);
      return v;
    };
    auto rev = enc(a.rot[n]);
    std::reverse(rev.begin(), rev.end());
    CHECK(cyclic_equal(rev, enc(b.rot[n])));
    // All other nodes keep their rotators.
    for (int m = 0; m < lg.g.numNodes(); ++m)
      if (m != n) CHECK(a.rot[m] == b.rot[m]);
  }
}

TEST_CASE("valid_rotation catches corrupted systems") {
  Complex2 c = gen("cone-K4");
  RotationSystem s = default_rotation(c);
  CHECK(valid_rotation(c, s));
  RotationSystem bad = s;
  // Drop one traversal from a face-degree-3 edge.
  for (auto& se : bad.sigma)
    if (se.size() == 3) {
      se.pop_back();
      break;
    }
  CHECK_FALSE(valid_rotation(c, bad));
}

TEST_CASE("cone over K4 embeds, cone over K5 does not") {
  Complex2 k4 = gen("cone-K4");
  CHECK(rotation_system_count(k4, 1000) == 16);
  CHECK(oracle_prs_exists_plain(k4, 1000) == true);
  CHECK(oracle_prs_exists(k4, 100000) == true);

  Complex2 k5 = gen("cone-K5");
  CHECK(rotation_system_count(k5, 100000) == 7776);
  CHECK(oracle_prs_exists_plain(k5, 100000) == false);
  CHECK(oracle_prs_exists(k5, 1000000) == false);
}

TEST_CASE("pruned and plain exhaustive searches agree") {
  for (const char* name :
       {"tetrahedron", "cone-K4", "cone-K33", "delta2", "octahedron-obstruction-1",
        "octahedron-obstruction-3", "moebius-min-555", "moebius-min-5454",
        "torus-crossing-1-2", "annulus", "disc"}) {
    Complex2 c = gen(name);
    auto plain = oracle_prs_exists_plain(c, 2000000);
    auto pruned = oracle_prs_exists(c, 4000000);
    REQUIRE(plain.has_value());
    REQUIRE(pruned.has_value());
    CHECK(plain == pruned);
  }
}

TEST_CASE("obstruction catalog instances admit no planar rotation system") {
  for (const char* name :
       {"moebius-min-555", "moebius-min-5454", "octahedron-obstruction-3",
        "torus-crossing-1-2", "torus-crossing-2-3"}) {
    CAPTURE(name);
    CHECK(oracle_prs_exists(gen(name), 8000000) == false);
  }
}

TEST_CASE("homology ranks") {
  CHECK(h1_rank(gen("tetrahedron"), 2) == 0);
  CHECK(h1_rank(gen("tetrahedron"), 3) == 0);
  CHECK(h1_rank(gen("torus"), 2) == 2);
  CHECK(h1_rank(gen("torus"), 5) == 2);
  CHECK(h1_rank(gen("cone-K5"), 2) == 0);   // cones are contractible
  CHECK(h1_rank(gen("annulus"), 2) == 1);
  CHECK(h1_rank(gen("disc"), 2) == 0);
  CHECK(homology_trivial(gen("moebius-min-555"), 2));
  CHECK_THROWS(h1_rank(gen("disc"), 4));    // modulus must be prime
}

TEST_CASE("bounded surface classification") {
  CHECK(classify_bounded_surface(gen("annulus")) == SurfaceKind::Annulus);
  CHECK(classify_bounded_surface(gen("disc")) == SurfaceKind::Other);

  // The classic 5-vertex Moebius strip: faces {i, i+1, i+2} mod 5.
  std::vector<std::vector<Id>> tris;
  auto m = [](int i) { return "m" + std::to_string(i % 5); };
  for (int i = 0; i < 5; ++i) tris.push_back({m(i), m(i + 1), m(i + 2)});
  CHECK(classify_bounded_surface(complex_from_vertex_faces(tris)) ==
        SurfaceKind::MoebiusStrip);

  // The 5,5,5 obstruction minus its attached central face is a Moebius strip.
  Complex2 full = gen("moebius-min-555");
  Complex2 strip;
  for (const auto& v : full.vertices) strip.addVertex(v);
  strip.edges = full.edges;
  for (const auto& f : full.faces)
    if (f.trail.size() != 3 ||
        !(full.travTail(f.trail[0]) < 3 && full.travTail(f.trail[1]) < 3 &&
          full.travTail(f.trail[2]) < 3))
      strip.faces.push_back(f);
  // Keep exactly the band: drop the face whose vertices are all central.
  Diagnostics d;
  auto checked = validate_complex(strip, d);
  REQUIRE(checked.has_value());
  REQUIRE(checked->faces.size() == full.faces.size() - 1);
  CHECK(classify_bounded_surface(*checked) == SurfaceKind::MoebiusStrip);

  // Sphere: closed, chi = 2, no boundary -> Other.
  CHECK(classify_bounded_surface(gen("octahedron")) == SurfaceKind::Other);
  CHECK_THROWS(classify_bounded_surface(gen("cone-K5")));  // face degree 4 edges
}

TEST_CASE("dual of a disjoint-union-like complex keeps per-part duals") {
  // Two tetrahedra sharing nothing cannot be validated as one complex here,
  // so exercise the composition property on a wedge instead: local surfaces
  // and dual cells add up between cone-K4 and its recount after re-gluing.
  Complex2 c = gen("delta2");
  RotationSystem s = default_rotation(c);
  DualComplex d = dual_complex(c, s);
  CHECK(d.complex.edges.size() == c.faces.size());
  std::set<Id> dualFaceIds;
  for (const auto& f : d.complex.faces) dualFaceIds.insert(f.id);
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
    CHECK(dualFaceIds.count(c.edges[e].id) == (c.faceDegree(e) >= 1 ? 1u : 0u));
}
