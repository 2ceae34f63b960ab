#pragma once
// Rotation systems on 2-complexes: per-edge cyclic orders of incident face
// traversals, the rotations they induce on link graphs, sphere checking,
// local surfaces obtained by gluing face copies, and the dual complex.

#include <functional>
#include <optional>

#include "emb3/complex.hpp"

namespace emb3 {

// One traversal of a face through a fixed edge.
struct SigmaEntry {
  int face = -1;     // complex face index
  int pos = -1;      // position of the traversal in that face's trail
  bool forward = true;
  bool operator==(const SigmaEntry&) const = default;
};

// sigma[e] is a cyclic orientation of all face traversals through edge e.
struct RotationSystem {
  std::vector<std::vector<SigmaEntry>> sigma;
};

// The rotation system listing faces in input order at every edge.
RotationSystem default_rotation(const Complex2& c);

// Checks sigma lists exactly the traversals through each edge, once each.
bool valid_rotation(const Complex2& c, const RotationSystem& s);

// Rotation induced on the link graph at v: the rotator at an edge-end node is
// sigma(e) read forward at the head end and reversed at the tail end.
GraphRotation induced_link_rotation(const Complex2& c, const RotationSystem& s,
                                    const LinkGraph& lg);

struct PlanarityReport {
  bool planar = false;
  std::vector<TracedSurface> perVertex;  // link complex of every vertex
};

PlanarityReport is_planar_rotation_system(const Complex2& c, const RotationSystem& s);

// Enumerates all rotation systems (product of (d-1)! cyclic orders over edges
// of face-degree d >= 3). Returns false iff the enumeration exceeded cap
// systems. fn may return false to stop early (the function then returns true).
bool for_each_rotation_system(const Complex2& c, long long cap,
                              const std::function<bool(const RotationSystem&)>& fn);

// Number of rotation systems, saturating at cap.
long long rotation_system_count(const Complex2& c, long long cap);

// A local surface: one equivalence class of face orientations under the
// gluing relation read off sigma, together with the cell counts of the glued
// surface. Vertices of the glued surface are faces of link complexes.
struct LocalSurface {
  std::vector<std::pair<int, bool>> orientations;  // (face, positive side?)
  std::vector<std::pair<int, int>> vertexClones;   // (complex vertex, traced link face)
  long long V = 0, E = 0, F = 0;
  long long eulerChar() const { return V - E + F; }
  long long genus() const { return (2 - eulerChar()) / 2; }
};

std::vector<LocalSurface> local_surfaces(const Complex2& c, const RotationSystem& s);

// Dual complex: vertices are local surfaces, edges are faces of C (tail at
// the negative side's surface, head at the positive side's), and faces are
// the face-degree >= 1 edges of C with trails read off sigma.
struct DualComplex {
  Complex2 complex;
  RotationSystem sigma;               // rotation induced on the dual
  std::vector<LocalSurface> surfaces; // dual vertex i <-> surfaces[i]
};

DualComplex dual_complex(const Complex2& c, const RotationSystem& s);

struct EulerIdentityReport {
  long long lhs = 0;  // |V| - |E| + |F| - #local surfaces
  bool equality = false;
  bool nullhomologousAtP = false;
  std::vector<long long> genera;  // per local surface
};

// Requires a planar rotation system (throws std::invalid_argument otherwise).
EulerIdentityReport euler_identity_report(const Complex2& c, const RotationSystem& s,
                                          int p);

enum class SurfaceKind { MoebiusStrip, Annulus, Other };

// Classifies a connected surface-with-boundary complex by Euler
// characteristic, boundary-cycle count, and orientability. Throws
// std::invalid_argument when the input is not such a complex.
SurfaceKind classify_bounded_surface(const Complex2& t);

}  // namespace emb3
