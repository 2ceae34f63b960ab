#pragma once
// First homology of a 2-complex with coefficients in F_p.

#include "emb3/complex.hpp"

namespace emb3 {

// Rank of H1(C, F_p): cycle-space dimension of the skeleton minus the rank of
// the face boundary matrix over F_p.
long long h1_rank(const Complex2& c, int p);

bool homology_trivial(const Complex2& c, int p);

}  // namespace emb3
