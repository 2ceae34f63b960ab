#pragma once
// JSON serialization for 2-complexes.
//
// Schema:
//   {"vertices": ["a", ...],
//    "edges":    [{"id": "e", "tail": "a", "head": "b"}, ...],
//    "faces":    [{"id": "f", "trail": [{"edge": "e", "forward": true}, ...]},
//                 ...]}
//
// Shorthand: a face may instead be an array of vertex ids (a cycle); edges
// are then inferred as "min-max" pairs directed from the smaller id, and
// "vertices"/"edges" may be omitted entirely.

#include <optional>
#include <string>

#include <json.hpp>

#include "emb3/complex.hpp"

namespace emb3 {

nlohmann::json complex_to_json(const Complex2& c);

// Parses either schema; validation errors land in diag.
std::optional<Complex2> complex_from_json(const nlohmann::json& j, Diagnostics& diag);

// Reads a complex from a file path. Errors land in diag.
std::optional<Complex2> complex_from_file(const std::string& path, Diagnostics& diag);

// Stable content hash (FNV-1a over the canonical serialization), hex string.
std::string complex_hash(const Complex2& c);

}  // namespace emb3
