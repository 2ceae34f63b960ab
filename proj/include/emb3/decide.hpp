#pragma once
// The locally 3-connected decision core: rotation frameworks over link
// embeddings, red/green edge colours, parity normalization, and extraction of
// verifiable obstruction certificates (cones over Kuratowski subdivisions,
// combined cones, Moebius obstructions) as replayable operation scripts.

#include <optional>
#include <string>
#include <utility>

#include "emb3/complex.hpp"
#include "emb3/minors.hpp"
#include "emb3/rotation.hpp"

namespace emb3 {

// A choice of planar embedding (rotation) for every link graph such that at
// each edge the two rotators (cyclic face orders at its end nodes) agree or
// are reverse. An edge is green when they are reverse, red when they agree;
// edges of face degree <= 2 are always green.
struct RotationFramework {
  std::vector<LinkGraph> links;        // per vertex
  std::vector<GraphRotation> linkRot;  // per vertex, planar for its link
  std::vector<bool> red;               // per edge of the complex
};

struct FrameworkResult {
  enum class Status {
    Ok,
    NotLocally3Connected,  // some link fails 3-connectivity; cell names it
    NonPlanarLink,         // cell = vertex id
    NonPlanarEdgeLink,     // cell = edge id; link at the contraction vertex
  };
  Status status = Status::Ok;
  Id cell;
  std::optional<RotationFramework> framework;
};

// Builds a framework by embedding every link graph. Requires every link
// 3-connected unless `requireLocal3` is false (then subdivisions of
// 3-connected graphs are accepted). Failure pinpoints the first offending
// vertex or edge in canonical order, preferring vertices.
FrameworkResult build_rotation_framework(const Complex2& c, bool requireLocal3 = true);

struct ColorNormalization {
  enum class Outcome {
    AllGreen,  // sigma emitted
    RedFace,   // some face boundary has an odd number of red edges
    OddCycle,  // odd cycle not decomposable into face boundaries over F2
  };
  Outcome outcome = Outcome::AllGreen;
  RotationFramework framework;             // after flips
  std::optional<RotationSystem> sigma;     // AllGreen
  int redFace = -1;                        // RedFace: face index
  std::vector<int> oddCycleEdges;          // OddCycle: edge indices
};

// Flips link embeddings along a BFS spanning forest (rooted at the smallest
// vertex ids) until all tree edges are green. Emits a planar rotation system
// when everything is green; otherwise finds an odd red cycle and decomposes
// it over F_2 into face boundaries to produce a face with odd red count.
// Decomposition can only fail when H_1(C, F_2) is nontrivial.
ColorNormalization normalize_colors(const Complex2& c, RotationFramework f);

enum class ObstructionKind {
  ConeOverKuratowski,
  CombinedCone,
  Moebius,
  TorusCrossing,
  Helicopter,
  NonPlanarLinkRaw,
};

struct Obstruction {
  ObstructionKind kind = ObstructionKind::NonPlanarLinkRaw;
  std::string kuratowskiKind;  // "K5"/"K33" for cone and combined cone
  int family = 0;              // combined cone: 1..5
  std::string moebiusVariant;  // "555"/"5454" after minimization, else ""
  std::pair<int, int> windings{0, 0};  // torus crossing
  Id witnessCell;              // vertex/edge/face the extraction started from
  MinorScript script;          // replays on the source complex
  std::string description;
};

// Space restriction to a cone over a Kuratowski subdivision inside the link
// at v. Precondition: that link is non-planar. The result of the script is
// re-verified before returning; throws std::logic_error otherwise.
Obstruction extract_cone_obstruction(const Complex2& c, const Id& v);

// Space restriction to a simplicial combined cone over a vertex sum
// H1 (+)_e H2 forming a Kuratowski subdivision, with the family index 1..5
// determined by the cut (1 for K5; 2/3 for the 2-vs-4 cuts of K33 with the
// small side inside one class resp. mixed; 4/5 for the 3-vs-3 cuts).
// Precondition: links at e's endpoints planar, link at the contraction
// vertex of C/e non-planar.
Obstruction extract_combined_cone(const Complex2& c, const Id& e);

// Space restriction to a Moebius obstruction: central face f (odd red),
// the six witness faces read from the link embeddings, and the faces of the
// two embedding face boundaries at f in each link. With `minimize`, greedily
// contracts while the certificate predicate keeps holding; when the result
// matches one of the two minimal nice triangulations (boundary degrees
// 5,5,5 or 5,4,5,4) its variant label is set, otherwise it stays empty
// (extracted certificates are often already smaller than the nice minima).
Obstruction extract_moebius(const Complex2& c, const RotationFramework& f,
                            const Id& face, bool minimize = false);

struct DecideOptions {
  int p = 2;
  bool assumeSimplyConnected = false;
  bool minimize = false;
};

struct Verdict {
  enum class Status {
    Found,         // planar rotation system exists, sigma attached
    None,          // no planar rotation system, obstruction attached
    Inapplicable,  // a hypothesis failed; reason explains which
  };
  enum class Interpretation {
    EmbedsInS3IfSimplyConnected,
    EmbedsInOrientable3Manifold,
    NotEmbeddableAnywhereOrientable,
    Unknown,
  };
  Status status = Status::Inapplicable;
  std::optional<RotationSystem> sigma;
  std::optional<Obstruction> obstruction;
  bool h1Trivial = false;
  int p = 2;
  bool assumedSimplyConnected = false;
  Interpretation interpretation = Interpretation::Unknown;
  std::string reason;  // Inapplicable: which hypothesis failed
};

// Decision procedure for simplicial, locally 3-connected complexes: either a
// verified planar rotation system or a verified obstruction certificate.
// Violated preconditions yield Inapplicable (callers route to the general
// pipeline).
Verdict decide_locally_3_connected(const Complex2& c, const DecideOptions& opt = {});

struct GeneralizedCheck {
  bool frameworkExists = false;
  Id failure;                // vertex or edge blocking the framework
  bool generalized = false;  // every face has an even red count
  std::vector<Id> oddFaces;  // faces with odd red count when !generalized
};

// Embeddability in some (possibly non-orientable) 3-manifold for locally
// 3-connected complexes: embed links arbitrarily, color edges, and demand an
// even red count on every face. Independent of the embedding choice.
GeneralizedCheck generalized_prs_check(const Complex2& c);

}  // namespace emb3
