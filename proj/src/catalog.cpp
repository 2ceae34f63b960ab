#include "emb3/catalog.hpp"

#include <stdexcept>

namespace emb3 {

namespace {

Complex2 tetrahedron() {
  return simplicial_from_triangles(
      {{{"a", "b", "c"}}, {{"a", "b", "d"}}, {{"a", "c", "d"}}, {{"b", "c", "d"}}});
}

std::vector<std::vector<Id>> octahedron_triangles() {
  std::vector<std::vector<Id>> tris;
  for (const Id& x : {"x0", "x1"})
    for (const Id& y : {"y0", "y1"})
      for (const Id& z : {"z0", "z1"}) tris.push_back({x, y, z});
  return tris;
}

Complex2 icosahedron() {
  auto u = [](int i) { return "u" + std::to_string(i % 5); };
  auto l = [](int i) { return "l" + std::to_string(i % 5); };
  std::vector<std::vector<Id>> tris;
  for (int i = 0; i < 5; ++i) {
    tris.push_back({"n", u(i), u(i + 1)});
    tris.push_back({"s", l(i), l(i + 1)});
    tris.push_back({u(i), u(i + 1), l(i)});
    tris.push_back({l(i), l(i + 1), u(i + 1)});
  }
  return complex_from_vertex_faces(tris);
}

Complex2 bipyramid(int n) {
  if (n < 3) throw std::invalid_argument("bipyramid needs a cycle of length >= 3");
  auto c = [n](int i) { return "c" + std::to_string(i % n); };
  std::vector<std::vector<Id>> tris;
  for (int i = 0; i < n; ++i) {
    tris.push_back({"n", c(i), c(i + 1)});
    tris.push_back({"s", c(i), c(i + 1)});
  }
  return complex_from_vertex_faces(tris);
}

Complex2 torus7() {
  auto v = [](int i) { return "t" + std::to_string(((i % 7) + 7) % 7); };
  std::vector<std::vector<Id>> tris;
  for (int i = 0; i < 7; ++i) {
    tris.push_back({v(i), v(i + 1), v(i + 3)});
    tris.push_back({v(i), v(i + 2), v(i + 3)});
  }
  return complex_from_vertex_faces(tris);
}

Complex2 octahedron_obstruction(int squares) {
  if (squares < 0 || squares > 3)
    throw std::invalid_argument("octahedron obstruction takes 0..3 squares");
  std::vector<std::vector<Id>> faces = octahedron_triangles();
  std::vector<std::vector<Id>> sq = {{"x0", "y0", "x1", "y1"},
                                     {"x0", "z0", "x1", "z1"},
                                     {"y0", "z0", "y1", "z1"}};
  for (int i = 0; i < squares; ++i) faces.push_back(sq[i]);
  return complex_from_vertex_faces(faces);
}

// Triangulated band over the base cycle (o0,o1,o2) winding around it w >= 2
// times. The bottom of the band walks the base cycle w times; the given
// apexes cover it in equal contiguous runs, with a "switch" triangle
// {o, apex_i, apex_{i+1}} where consecutive runs meet.
std::vector<std::vector<Id>> band_over_triangle(const std::vector<Id>& o, int w,
                                                const std::vector<Id>& apexes) {
  int r = static_cast<int>(apexes.size());
  int steps = 3 * w;
  if (r <= 0 || steps % r != 0)
    throw std::invalid_argument("band apex count must divide 3*winding");
  int run = steps / r;
  if (run > 3) throw std::invalid_argument("band runs longer than the base cycle");
  std::vector<std::vector<Id>> tris;
  for (int i = 0; i < r; ++i) {
    int start = i * run;
    for (int p = start; p < start + run; ++p)
      tris.push_back({o[p % 3], o[(p + 1) % 3], apexes[i]});
    // Switch to the next apex at the shared bottom vertex.
    tris.push_back({o[(start + run) % 3], apexes[i], apexes[(i + 1) % r]});
  }
  return tris;
}

Complex2 moebius_min_555() {
  std::vector<Id> o = {"u0", "u1", "u2"};
  auto faces = band_over_triangle(o, 2, {"x0", "x1", "x2"});
  faces.push_back({"u0", "u1", "u2"});  // face attached at the central cycle
  return complex_from_vertex_faces(faces);
}

Complex2 moebius_min_5454() {
  // Boundary cycle x0..x3 with degrees 5,4,5,4; central cycle u0,u1,u2.
  std::vector<std::vector<Id>> faces = {
      {"x0", "u0", "u1"}, {"x0", "u1", "u2"}, {"x0", "x1", "u2"},
      {"x1", "u2", "u0"}, {"x1", "x2", "u0"}, {"x2", "u0", "u1"},
      {"x2", "u1", "u2"}, {"x2", "x3", "u2"}, {"x3", "u2", "u0"},
      {"x3", "x0", "u0"}, {"u0", "u1", "u2"}};
  return complex_from_vertex_faces(faces);
}

Complex2 torus_crossing(int w1, int w2) {
  if (w1 < 1 || w2 < 1 || w1 == w2)
    throw std::invalid_argument("torus crossing needs two distinct windings >= 1");
  std::vector<Id> o = {"o0", "o1", "o2"};
  std::vector<std::vector<Id>> faces;
  auto strip = [&](int w, const std::string& prefix) {
    if (w == 1) {
      faces.push_back({o[0], o[1], o[2]});
    } else {
      // Runs of length 1 or 2 keep the apex switches distributed over the
      // base cycle; runs of length 3 would pile every switch triangle onto
      // one base vertex and pinch its link.
      int r = (3 * w) % 2 == 0 ? (3 * w) / 2 : 3 * w;
      std::vector<Id> apexes;
      for (int i = 0; i < r; ++i) apexes.push_back(prefix + std::to_string(i));
      auto band = band_over_triangle(o, w, apexes);
      faces.insert(faces.end(), band.begin(), band.end());
    }
  };
  strip(w1, "a");
  strip(w2, "b");
  return complex_from_vertex_faces(faces);
}

// Simplicial combined cone over a Kuratowski graph with a chosen cut: every
// cut edge is subdivided twice and the middle edges contracted, giving one
// crossing vertex per cut edge; p and q are the two tops.
Complex2 combined_cone(const Multigraph& g, const std::vector<bool>& sideOfNode) {
  std::vector<std::vector<Id>> faces;
  auto top = [&](int n) { return sideOfNode[n] ? Id("q") : Id("p"); };
  for (const auto& e : g.edges) {
    if (sideOfNode[e.u] == sideOfNode[e.v]) {
      faces.push_back({g.nodes[e.u], g.nodes[e.v], top(e.u)});
    } else {
      Id c = "c." + e.id;
      const Id& u = g.nodes[sideOfNode[e.u] ? e.v : e.u];  // side-p endpoint
      const Id& v = g.nodes[sideOfNode[e.u] ? e.u : e.v];  // side-q endpoint
      faces.push_back({"p", "q", c});
      faces.push_back({u, c, "p"});
      faces.push_back({v, c, "q"});
    }
  }
  return complex_from_vertex_faces(faces);
}

Complex2 combined_cone_family(int family) {
  if (family == 1) {
    Multigraph g = make_complete(5, "v");
    std::vector<bool> side(5, true);
    side[g.nodeIndex("v0")] = side[g.nodeIndex("v1")] = false;
    return combined_cone(g, side);
  }
  Multigraph g = make_complete_bipartite(3, 3);  // classes a0..a2, b0..b2
  std::vector<bool> side(6, true);
  auto put = [&](const Id& id) { side[g.nodeIndex(id)] = false; };
  switch (family) {
    case 2: put("a0"); put("a1"); break;                // 2 vs 4, same class
    case 3: put("a0"); put("b0"); break;                // 2 vs 4, mixed
    case 4: put("a0"); put("a1"); put("a2"); break;     // 3 vs 3, whole class
    case 5: put("a0"); put("a1"); put("b0"); break;     // 3 vs 3, mixed
    default: throw std::invalid_argument("combined cone family must be 1..5");
  }
  return combined_cone(g, side);
}

Complex2 annulus() {
  return complex_from_vertex_faces({{"a0", "a1", "b0"}, {"a1", "b1", "b0"},
                                    {"a1", "a2", "b1"}, {"a2", "b2", "b1"},
                                    {"a2", "a0", "b2"}, {"a0", "b0", "b2"}});
}

Complex2 disc() {
  return complex_from_vertex_faces({{"a", "b", "t"}, {"b", "c", "t"}, {"c", "a", "t"}});
}

// n triangle pairs glued along the two shared edges (v,wa) and (v,wb).
Complex2 delta_plus(int n) {
  if (n < 1) throw std::invalid_argument("delta-plus needs n >= 1");
  std::vector<std::vector<Id>> faces;
  for (int i = 1; i <= n; ++i) {
    Id q = "q" + std::to_string(i);
    faces.push_back({"v", q, "wa"});
    faces.push_back({"v", q, "wb"});
  }
  return complex_from_vertex_faces(faces);
}

Multigraph base_graph(const std::string& key) {
  if (key == "K4") return make_complete(4, "v");
  if (key == "K5") return make_complete(5, "v");
  if (key == "K6") return make_complete(6, "v");
  if (key == "K33") return make_complete_bipartite(3, 3);
  if (key == "petersen") return make_petersen();
  if (key.size() > 1 && key[0] == 'C') {
    int n = std::stoi(key.substr(1));
    return make_cycle(n, "v");
  }
  throw std::invalid_argument("unknown cone base: " + key);
}

bool parse_suffix_int(const std::string& name, const std::string& prefix, int& out) {
  if (name.rfind(prefix, 0) != 0) return false;
  try {
    size_t used = 0;
    out = std::stoi(name.substr(prefix.size()), &used);
    return used == name.size() - prefix.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

Complex2 gen(const std::string& name) {
  if (name == "tetrahedron") return tetrahedron();
  if (name == "octahedron") return simplicial_from_triangles([] {
      std::vector<std::array<Id, 3>> t;
      for (const auto& f : octahedron_triangles()) t.push_back({f[0], f[1], f[2]});
      return t;
    }());
  if (name == "icosahedron") return icosahedron();
  if (name == "torus") return torus7();
  if (name == "annulus") return annulus();
  if (name == "disc") return disc();
  if (name == "moebius-min-555") return moebius_min_555();
  if (name == "moebius-min-5454") return moebius_min_5454();
  if (name == "delta2") return delta_plus(2);
  if (name.rfind("cone-", 0) == 0) return cone_over(base_graph(name.substr(5)));
  int k = 0;
  if (parse_suffix_int(name, "octahedron-obstruction-", k)) return octahedron_obstruction(k);
  if (parse_suffix_int(name, "bipyramid-", k)) return bipyramid(k);
  if (parse_suffix_int(name, "combined-cone-", k)) return combined_cone_family(k);
  if (parse_suffix_int(name, "delta-plus-", k)) return delta_plus(k);
  if (name.rfind("torus-crossing-", 0) == 0) {
    std::string rest = name.substr(std::string("torus-crossing-").size());
    auto dash = rest.find('-');
    if (dash != std::string::npos) {
      try {
        int w1 = std::stoi(rest.substr(0, dash));
        int w2 = std::stoi(rest.substr(dash + 1));
        return torus_crossing(w1, w2);
      } catch (const std::invalid_argument&) {
      }
    }
    throw std::invalid_argument("torus-crossing needs two windings, e.g. torus-crossing-1-2");
  }
  throw std::invalid_argument("unknown catalog name: " + name);
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string n, std::string d, bool simp, std::optional<bool> prs,
                 std::string fam = "") {
    out.push_back(CatalogEntry{std::move(n), std::move(d), simp, prs, std::move(fam)});
  };
  add("tetrahedron", "boundary of the 3-simplex", true, true);
  add("octahedron", "octahedron boundary sphere", true, true);
  add("icosahedron", "icosahedron boundary sphere", true, true);
  add("bipyramid-8", "bipyramid sphere over an 8-cycle (parametric)", true, true);
  add("torus", "7-vertex torus triangulation", true, true);
  add("annulus", "triangulated annulus", true, true);
  add("disc", "triangulated disc", true, true);
  add("cone-K4", "cone over K4", true, true);
  add("cone-K5", "cone over K5", true, false, "ConeOverKuratowski");
  add("cone-K33", "cone over K3,3", true, false, "ConeOverKuratowski");
  add("cone-K6", "cone over K6", true, false, "ConeOverKuratowski");
  add("cone-petersen", "cone over the Petersen graph", true, false, "ConeOverKuratowski");
  add("octahedron-obstruction-0", "octahedron sphere, no squares", true, true);
  add("octahedron-obstruction-1", "octahedron plus one coordinate square", true, true);
  add("octahedron-obstruction-2", "octahedron plus two coordinate squares", true, true);
  add("octahedron-obstruction-3", "octahedron plus all three coordinate squares", true,
      false, "Moebius");
  add("moebius-min-555", "minimal Moebius obstruction, boundary degrees 5,5,5", true,
      false, "Moebius");
  add("moebius-min-5454", "minimal Moebius obstruction, boundary degrees 5,4,5,4", true,
      false, "Moebius");
  for (int f = 1; f <= 5; ++f)
    add("combined-cone-" + std::to_string(f),
        f == 1 ? "combined cone over K5, cut 2|3"
               : "combined cone over K3,3, cut family " + std::to_string(f),
        true, false, "CombinedCone");
  add("torus-crossing-1-2", "torus crossing obstruction, windings 1 and 2", true, false,
      "TorusCrossing");
  add("torus-crossing-2-3", "torus crossing obstruction, windings 2 and 3", true, false,
      "TorusCrossing");
  add("delta2", "two triangle pairs glued along two edges", true, true);
  add("delta-plus-4", "four triangle pairs glued along two edges (parametric)", true, true);
  return out;
}

}  // namespace emb3
