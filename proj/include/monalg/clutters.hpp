#pragma once

// Clutters and simple graphs as matrix sources: incidence and dual matrices,
// minimal vertex covers, matroid bases, chordless cycles, and the duality
// statements relating a clutter to its complement matrix.

#include "monalg/rounding.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <set>

namespace monalg {

using VertexSet = std::vector<int>; ///< sorted, 0-based

/// Vertex count plus edges, none contained in another, sorted
/// lexicographically.
class Clutter {
public:
  Clutter() = default;
  Clutter(int vertex_count, std::vector<VertexSet> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw DomainError("clutter: negative vertex count");
    for (auto &e : edges_) {
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw DomainError("clutter: repeated vertex inside an edge");
      for (int v : e)
        if (v < 0 || v >= n_)
          throw DomainError("clutter: vertex " + std::to_string(v + 1) + " out of range 1.." +
                            std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (std::size_t j = 0; j < edges_.size(); ++j)
        if (i != j && std::includes(edges_[j].begin(), edges_[j].end(), edges_[i].begin(), edges_[i].end()))
          throw DomainError("clutter: edge " + set_string(edges_[i]) + " is contained in edge " +
                            set_string(edges_[j]));
  }

  int vertex_count() const { return n_; }
  const std::vector<VertexSet> &edges() const { return edges_; }
  bool operator==(const Clutter &) const = default;

  static std::string set_string(const VertexSet &e) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i] + 1);
    return s + "}";
  }

private:
  int n_ = 0;
  std::vector<VertexSet> edges_;
};

/// Simple graph; edges kept in input order with u < v.
class Graph {
public:
  Graph() = default;
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges) : n_(vertex_count) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw DomainError("graph: vertex out of range 1.." + std::to_string(n_));
      if (u == v) throw DomainError("graph: loop at vertex " + std::to_string(u + 1));
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second)
        throw DomainError("graph: repeated edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
      edges_.push_back({u, v});
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>> &edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::vector<std::vector<bool>> adjacency() const {
    std::vector<std::vector<bool>> adj(n_, std::vector<bool>(n_, false));
    for (auto [u, v] : edges_) adj[u][v] = adj[v][u] = true;
    return adj;
  }
  bool has_isolated_vertex() const {
    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) ++deg[u], ++deg[v];
    return std::count(deg.begin(), deg.end(), 0) > 0;
  }
  bool connected() const {
    if (n_ == 0) return true;
    auto adj = adjacency();
    std::vector<bool> seen(n_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n_; ++w)
        if (adj[u][w] && !seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n_;
  }
  bool bipartite() const {
    auto adj = adjacency();
    std::vector<int> colour(n_, -1);
    for (int s = 0; s < n_; ++s) {
      if (colour[s] >= 0) continue;
      colour[s] = 0;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w = 0; w < n_; ++w) {
          if (!adj[u][w]) continue;
          if (colour[w] < 0) {
            colour[w] = 1 - colour[u];
            stack.push_back(w);
          } else if (colour[w] == colour[u]) {
            return false;
          }
        }
      }
    }
    return true;
  }
  bool triangle_free() const {
    auto adj = adjacency();
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (adj[a][b])
          for (int c = b + 1; c < n_; ++c)
            if (adj[a][c] && adj[b][c]) return false;
    return true;
  }
  Graph complement() const {
    auto adj = adjacency();
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (!adj[u][v]) e.push_back({u, v});
    return Graph(n_, e);
  }
  Clutter as_clutter() const {
    std::vector<VertexSet> e;
    for (auto [u, v] : edges_) e.push_back({u, v});
    return Clutter(n_, e);
  }

private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}
inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}
inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}
inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return Graph(a + b, e);
}
inline Graph disjoint_union(const Graph &g, const Graph &h) {
  auto e = g.edges();
  for (auto [u, v] : h.edges()) e.push_back({u + g.vertex_count(), v + g.vertex_count()});
  return Graph(g.vertex_count() + h.vertex_count(), e);
}

// --- matrices -------------------------------------------------------------------

inline IntMatrix incidence_matrix(const Clutter &c) {
  if (c.edges().empty()) throw DomainError("incidence matrix of a clutter without edges");
  IntMatrix a(c.vertex_count(), c.edges().size());
  for (std::size_t j = 0; j < c.edges().size(); ++j)
    for (int v : c.edges()[j]) a(v, j) = 1;
  return a;
}

inline IntMatrix incidence_matrix(const Graph &g) {
  if (g.edges().empty()) throw DomainError("incidence matrix of a graph without edges");
  IntMatrix a(g.vertex_count(), g.edge_count());
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    a(g.edges()[j].first, j) = 1;
    a(g.edges()[j].second, j) = 1;
  }
  return a;
}

/// Entrywise 1 - a_ij. An edge equal to the whole vertex set becomes a zero
/// column; it is returned as is and rejected by matrix consumers.
inline IntMatrix dual_matrix(const IntMatrix &a) {
  require_zero_one(a);
  IntMatrix d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(i, j) = 1 - a(i, j);
  return d;
}

/// Clutter whose edges are the supports of the columns of a 0/1 matrix.
inline Clutter clutter_of_matrix(const IntMatrix &a) {
  require_zero_one(a);
  std::vector<VertexSet> e;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    VertexSet s;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) == 1) s.push_back(int(i));
    e.push_back(s);
  }
  return Clutter(int(a.rows()), e);
}

/// Drops zero rows: a variable no generator involves is a free polynomial
/// factor and changes neither normality nor rounding of the rest.
inline IntMatrix without_zero_rows(const IntMatrix &a) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!is_zero(a.row(i))) rows.push_back(a.row(i));
  return IntMatrix::from_rows(rows, a.cols());
}

// --- minimal vertex covers ----------------------------------------------------------

inline constexpr int kAlexanderDualVertexCap = 20;

namespace detail {
inline std::uint32_t mask_of(const VertexSet &e) {
  std::uint32_t m = 0;
  for (int v : e) m |= std::uint32_t(1) << v;
  return m;
}
inline VertexSet set_of(std::uint32_t m) {
  VertexSet s;
  for (int v = 0; m; ++v, m >>= 1)
    if (m & 1) s.push_back(v);
  return s;
}
} // namespace detail

/// Minimal vertex covers (the blocker), by enumerating every vertex subset.
/// A clutter without edges has the empty set as its only cover.
inline Clutter alexander_dual(const Clutter &c, int vertex_cap = kAlexanderDualVertexCap) {
  const int n = c.vertex_count();
  if (n > vertex_cap || n > 30)
    throw ResourceError("alexander_dual: " + std::to_string(n) + " vertices exceed cap " +
                            std::to_string(vertex_cap),
                        "alexander-dual-vertex-cap");
  std::vector<std::uint32_t> edges;
  for (const auto &e : c.edges()) edges.push_back(detail::mask_of(e));
  auto covers = [&](std::uint32_t s) {
    for (auto e : edges)
      if (!(e & s)) return false;
    return true;
  };
  std::vector<VertexSet> out;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
    const auto m = std::uint32_t(s);
    if (!covers(m)) continue;
    bool minimal = true;
    for (std::uint32_t r = m; r && minimal; r &= r - 1)
      if (covers(m & ~(r & -r))) minimal = false;
    if (minimal) out.push_back(detail::set_of(m));
  }
  return Clutter(n, out);
}

// --- el vegetariano ----------------------------------------------------------------

struct ComplementCoverReport {
  bool triangle_free = false;
  bool ideals_equal = false;
  std::vector<VertexSet> covers_of_complement; ///< I(G')^∨
  std::vector<VertexSet> dual_generators;      ///< I(G)*: complements of edges
};

/// Compares the minimal vertex covers of the complement graph with the
/// complements of the edges; they coincide exactly for triangle-free graphs.
inline ComplementCoverReport check_el_vegetariano(const Graph &g) {
  if (g.has_isolated_vertex()) throw DomainError("graph has an isolated vertex");
  ComplementCoverReport r;
  r.triangle_free = g.triangle_free();
  r.covers_of_complement = alexander_dual(g.complement().as_clutter()).edges();
  const int n = g.vertex_count();
  for (auto [u, v] : g.edges()) {
    VertexSet s;
    for (int x = 0; x < n; ++x)
      if (x != u && x != v) s.push_back(x);
    r.dual_generators.push_back(s);
  }
  std::sort(r.dual_generators.begin(), r.dual_generators.end());
  r.ideals_equal = r.covers_of_complement == r.dual_generators;
  if (r.ideals_equal != r.triangle_free)
    throw SoundnessError("I(G')^v = I(G)* disagrees with triangle-freeness");
  return r;
}

// --- duality theorem ---------------------------------------------------------------

struct DualityReport {
  bool rees_normal = false;          ///< (a) R[It]
  bool dual_downset_normal = false;  ///< (b) S* over the down-set of A*
  bool gamma_hilbert = false;        ///< (c) {-e_i, (v_i*, 1)}
  RoundingVerdict geq1_on_a;         ///< (d)
  RoundingVerdict leq1_on_dual;      ///< (e)
  bool verdict = false;
};

/// Rejects zero rows or columns in a matrix, naming the first offender.
inline void require_no_zero_lines(const IntMatrix &a, const std::string &name) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (is_zero(a.row(i)))
      throw DomainError(name + " has a zero row at index " + std::to_string(i + 1));
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (is_zero(a.column(j)))
      throw DomainError(name + " has a zero column at index " + std::to_string(j + 1));
}

/// Evaluates the five equivalent conditions; any disagreement is a soundness
/// failure.
inline DualityReport verify_duality_theorem(const Clutter &c, const RoundingOptions &opt = {}) {
  auto a = incidence_matrix(c);
  require_no_zero_lines(a, "incidence matrix");
  auto d = dual_matrix(a);
  require_no_zero_lines(d, "dual matrix");
  DualityReport r;
  r.rees_normal = is_normal(build_algebra(AlgebraKind::rees, a), opt.hilbert).verdict;
  r.dual_downset_normal =
      is_normal(build_algebra(AlgebraKind::S_downset, d, opt.down_set_cap), opt.hilbert).verdict;
  r.gamma_hilbert = is_hilbert_basis(make_cone(gamma_set(a)), opt.hilbert).verdict;
  r.geq1_on_a = irp_check(RoundingSystem::geq1, a, opt);
  r.leq1_on_dual = irp_check(RoundingSystem::leq1, d, opt);
  const bool vals[] = {r.rees_normal, r.dual_downset_normal, r.gamma_hilbert,
                       r.geq1_on_a.theorem_route, r.leq1_on_dual.theorem_route};
  for (bool v : vals)
    if (v != vals[0])
      throw SoundnessError("duality conditions disagree: (a)-(e) = " + std::to_string(vals[0]) +
                           std::to_string(vals[1]) + std::to_string(vals[2]) +
                           std::to_string(vals[3]) + std::to_string(vals[4]));
  r.verdict = vals[0];
  return r;
}

struct GraphDualNormality {
  bool rees_i = false;
  bool rees_i_star = false;
};

/// Normality of R[It] and R[I*t] for the edge ideal of a connected graph;
/// the two must agree.
inline GraphDualNormality graph_dual_normality(const Graph &g, const HilbertOptions &opt = {}) {
  if (!g.connected()) throw DomainError("graph_dual_normality: graph is not connected");
  auto a = incidence_matrix(g);
  auto d = dual_matrix(a);
  require_no_zero_lines(d, "dual matrix");
  GraphDualNormality r;
  r.rees_i = is_normal(build_algebra(AlgebraKind::rees, a), opt).verdict;
  r.rees_i_star = is_normal(build_algebra(AlgebraKind::rees, d), opt).verdict;
  if (r.rees_i != r.rees_i_star)
    throw SoundnessError("connected graph: R[It] and R[I*t] normality disagree");
  return r;
}

// --- matroids ------------------------------------------------------------------------

inline constexpr std::size_t kMatroidSubsetCap = 2'000'000;

namespace detail {
/// Calls f on every k-subset of {0..m-1} in lexicographic order.
template <class F> void for_each_k_subset(int m, int k, std::size_t cap, F f) {
  if (k < 0 || k > m) return;
  double count = 1;
  for (int i = 0; i < k; ++i) count = count * (m - i) / (i + 1);
  if (count > double(cap))
    throw ResourceError("matroid basis enumeration: C(" + std::to_string(m) + "," + std::to_string(k) +
                            ") subsets exceed cap " + std::to_string(cap),
                        "matroid-subset-cap");
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[i] == m - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}
} // namespace detail

/// Bases of the uniform matroid: all k-subsets of n elements.
inline Clutter uniform_matroid_bases(int n, int k, std::size_t cap = kMatroidSubsetCap) {
  if (k < 1 || k > n) throw DomainError("uniform matroid needs 1 <= k <= n");
  std::vector<VertexSet> e;
  detail::for_each_k_subset(n, k, cap, [&](const std::vector<int> &s) { e.push_back(s); });
  return Clutter(n, e);
}

/// Bases of the cycle matroid: spanning forests with one tree per component,
/// as subsets of the edge list (element j is edge j).
inline Clutter graphic_matroid_bases(const Graph &g, std::size_t cap = kMatroidSubsetCap) {
  const int n = g.vertex_count(), m = int(g.edge_count());
  // rank = n - number of components
  std::vector<int> comp(n);
  auto find = [&](auto &&self, int x) -> int { return comp[x] == x ? x : comp[x] = self(self, comp[x]); };
  for (int i = 0; i < n; ++i) comp[i] = i;
  int rank = 0;
  for (auto [u, v] : g.edges()) {
    int a = find(find, u), b = find(find, v);
    if (a != b) comp[a] = b, ++rank;
  }
  if (rank == 0) throw DomainError("graphic matroid of a graph without edges");
  std::vector<VertexSet> bases;
  detail::for_each_k_subset(m, rank, cap, [&](const std::vector<int> &s) {
    for (int i = 0; i < n; ++i) comp[i] = i;
    for (int j : s) {
      int a = find(find, g.edges()[j].first), b = find(find, g.edges()[j].second);
      if (a == b) return;
      comp[a] = b;
    }
    bases.push_back(s);
  });
  return Clutter(m, bases);
}

// --- chordless cycles -------------------------------------------------------------

namespace detail {
/// Minimal rotation of the lexicographically smaller orientation.
inline std::vector<int> canonical_cycle(std::vector<int> c) {
  auto least_rotation = [](std::vector<int> v) {
    auto best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      best = std::min(best, v);
    }
    return best;
  };
  auto fwd = least_rotation(c);
  std::reverse(c.begin(), c.end());
  auto bwd = least_rotation(c);
  return std::min(fwd, bwd);
}
} // namespace detail

/// Every chordless cycle of length >= 3, once each, in canonical form.
inline std::vector<std::vector<int>> primitive_cycles(const Graph &g) {
  const int n = g.vertex_count();
  auto adj = g.adjacency();
  std::set<std::vector<int>> found;
  std::vector<int> path;
  std::vector<bool> on(n, false);
  // path[0] is the least vertex of the cycle; interior vertices may touch
  // only their path neighbours
  std::function<void()> extend = [&]() {
    const int last = path.back();
    for (int w = path[0] + 1; w < n; ++w) {
      if (on[w] || !adj[last][w]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i) chord = adj[path[i]][w];
      if (chord) continue;
      if (path.size() >= 2 && adj[path[0]][w]) {
        auto c = path;
        c.push_back(w);
        found.insert(detail::canonical_cycle(c));
        continue;
      }
      path.push_back(w);
      on[w] = true;
      extend();
      on[w] = false;
      path.pop_back();
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on[s] = true;
    extend();
    on[s] = false;
  }
  return {found.begin(), found.end()};
}

// --- isomorphism classes -------------------------------------------------------

inline constexpr int kEnumerationVertexCap = 7;

/// One representative per isomorphism class of graphs on n vertices (the
/// lexicographically least relabelling), optionally connected only.
inline std::vector<Graph> graphs_up_to_isomorphism(int n, bool connected_only) {
  if (n > kEnumerationVertexCap)
    throw ResourceError("graph enumeration beyond " + std::to_string(kEnumerationVertexCap) + " vertices",
                        "enumeration-vertex-cap");
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      slot_of[i][j] = slot_of[j][i] = int(slots.size());
      slots.push_back({i, j});
    }
  const int m = int(slots.size());
  std::vector<std::vector<int>> perm_maps; // slot -> slot under each permutation
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    std::vector<int> map(m);
    for (int k = 0; k < m; ++k) map[k] = slot_of[p[slots[k].first]][p[slots[k].second]];
    perm_maps.push_back(map);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    bool least = true;
    for (const auto &map : perm_maps) {
      std::uint64_t img = 0;
      for (int k = 0; k < m; ++k)
        if ((mask >> k) & 1) img |= std::uint64_t(1) << map[k];
      if (img < mask) {
        least = false;
        break;
      }
    }
    if (!least) continue;
    std::vector<std::pair<int, int>> e;
    for (int k = 0; k < m; ++k)
      if ((mask >> k) & 1) e.push_back(slots[k]);
    Graph g(n, e);
    if (connected_only && !g.connected()) continue;
    out.push_back(g);
  }
  return out;
}

/// One representative per isomorphism class of clutters on n vertices with
/// between 1 and max_edges nonempty edges and no isolated vertex.
inline std::vector<Clutter> clutters_up_to_isomorphism(int n, int max_edges) {
  if (n > 6)
    throw ResourceError("clutter enumeration beyond 6 vertices", "enumeration-vertex-cap");
  const std::uint32_t full = (std::uint32_t(1) << n) - 1;
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto apply = [&](const std::vector<int> &pm, std::uint32_t s) {
    std::uint32_t r = 0;
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1) r |= std::uint32_t(1) << pm[v];
    return r;
  };
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::uint32_t)> grow = [&](std::uint32_t next) {
    if (!chosen.empty()) {
      std::uint32_t cover = 0;
      for (auto e : chosen) cover |= e;
      if (cover == full) {
        std::vector<std::uint32_t> best;
        for (const auto &pm : perms) {
          std::vector<std::uint32_t> img;
          for (auto e : chosen) img.push_back(apply(pm, e));
          std::sort(img.begin(), img.end());
          if (best.empty() || img < best) best = img;
        }
        classes.insert(best);
      }
    }
    if (int(chosen.size()) == max_edges) return;
    for (std::uint32_t s = next; s <= full; ++s) {
      bool ok = true;
      for (auto e : chosen)
        if ((e & s) == e || (e & s) == s) ok = false;
      if (!ok) continue;
      chosen.push_back(s);
      grow(s + 1);
      chosen.pop_back();
    }
  };
  grow(1);
  std::vector<Clutter> out;
  for (const auto &cls : classes) {
    std::vector<VertexSet> e;
    for (auto s : cls) e.push_back(detail::set_of(s));
    out.push_back(Clutter(n, e));
  }
  return out;
}

} // namespace monalg
