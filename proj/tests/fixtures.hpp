#pragma once

// Small matrices shared by the test suites.

#include "monalg/matrix.hpp"

#include <random>
#include <utility>
#include <vector>

namespace fixture {

using monalg::IntMatrix;

/// Incidence matrix of the n-cycle with edges {j, j+1 mod n}.
inline IntMatrix cycle(int n) {
  IntMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = 1;
    a((j + 1) % n, j) = 1;
  }
  return a;
}

inline IntMatrix graph(int n, const std::vector<std::pair<int, int>> &edges) {
  IntMatrix a(n, edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j) {
    a(edges[j].first, j) = 1;
    a(edges[j].second, j) = 1;
  }
  return a;
}

inline IntMatrix two_disjoint_pentagons() {
  std::vector<std::pair<int, int>> e;
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < 5; ++j) e.push_back({5 * c + j, 5 * c + (j + 1) % 5});
  return graph(10, e);
}

/// Entries in [0, maxentry], no zero row or column.
inline IntMatrix random_matrix(std::mt19937 &rng, int n, int q, int maxentry) {
  std::uniform_int_distribution<int> ent(0, maxentry);
  for (;;) {
    IntMatrix a(n, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < q; ++j) a(i, j) = ent(rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      bool nz = false;
      for (int j = 0; j < q; ++j) nz = nz || a(i, j) != 0;
      ok = nz;
    }
    for (int j = 0; j < q && ok; ++j) {
      bool nz = false;
      for (int i = 0; i < n; ++i) nz = nz || a(i, j) != 0;
      ok = nz;
    }
    if (ok) return a;
  }
}

} // namespace fixture
