#include "emb3/homology.hpp"

#include <stdexcept>
#include <vector>

namespace emb3 {

namespace {

// Rank of a dense matrix over F_p by Gaussian elimination.
long long rank_mod_p(std::vector<std::vector<int>> m, int p) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  long long rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && m[piv][col] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[row], m[piv]);
    // Normalize pivot to 1.
    int inv = 1;
    {
      int a = ((m[row][col] % p) + p) % p;
      // Fermat inverse; p is prime.
      int e = p - 2, base = a, acc = 1;
      while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      inv = acc;
    }
    for (size_t c = col; c < cols; ++c) m[row][c] = ((m[row][c] * inv) % p + p) % p;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      int f = ((m[r][col] % p) + p) % p;
      if (!f) continue;
      for (size_t c = col; c < cols; ++c)
        m[r][c] = ((m[r][c] - f * m[row][c]) % p + p) % p;
    }
    ++row;
    ++rank;
  }
  return rank;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

long long h1_rank(const Complex2& c, int p) {
  if (!is_prime(p)) throw std::invalid_argument("coefficient modulus must be prime");
  long long V = static_cast<long long>(c.vertices.size());
  long long E = static_cast<long long>(c.edges.size());
  long long comps = c.skeletonComponents();
  long long cycleSpace = E - V + comps;

  // Boundary of each face as an edge vector over F_p.
  std::vector<std::vector<int>> boundary(c.faces.size(), std::vector<int>(c.edges.size(), 0));
  for (size_t f = 0; f < c.faces.size(); ++f)
    for (const Traversal& t : c.faces[f].trail) {
      int& cell = boundary[f][t.edge];
      cell = (((cell + (t.forward ? 1 : -1)) % p) + p) % p;
    }
  long long boundaryRank = rank_mod_p(std::move(boundary), p);
  return cycleSpace - boundaryRank;
}

bool homology_trivial(const Complex2& c, int p) { return h1_rank(c, p) == 0; }

}  // namespace emb3
