#pragma once

// Canonical modules and a-invariants of normal monomial subrings, the
// Gorenstein property of the down-set subring S, and the complete
// intersection test for K[Ft ∪ {t}] of a graph.

#include "monalg/clutters.hpp"

namespace monalg {

// --- the down-set subring S ----------------------------------------------------

enum class GorensteinRoute {
  principal_omega,      ///< only the generator count of omega decided
  vertex_sum_sufficient, ///< -a(S) = 1/d_i + |l_i| for every maximal vertex
  integral_polytope      ///< P integral: Gorenstein iff a(S) = -(|l_i| + 1) for all i
};

inline constexpr std::string_view route_name(GorensteinRoute r) {
  switch (r) {
  case GorensteinRoute::principal_omega: return "principal-omega";
  case GorensteinRoute::vertex_sum_sufficient: return "vertex-sum-sufficient";
  case GorensteinRoute::integral_polytope: return "integral-polytope-criterion";
  }
  return "?";
}

struct CanonicalOptions {
  std::size_t scan_cap = 50'000'000; ///< lattice points visited by the omega scan
  std::size_t down_set_cap = kDefaultDownSetCap;
  HilbertOptions hilbert;
};

struct CanonicalModuleReport {
  MaximalVertexData vertex_data;
  std::vector<IntVector> omega_generators; ///< (a, b), lexicographic
  Integer a_invariant;                     ///< -max ceil(1/d_i + |l_i|)
  Integer a_invariant_from_omega;          ///< -min degree of a generator
  bool gorenstein = false;
  GorensteinRoute gorenstein_route = GorensteinRoute::principal_omega;
  Integer degree_bound;                    ///< last degree scanned
  std::size_t points_scanned = 0;
  Integer a_invariant_floor_form; ///< -(max floor|l_i| + 1)
  bool floor_form_differs = false;
  bool denominators_one_or_two = true;     ///< observation only
};

namespace detail {

/// omega = {(a,b) in Z^{n+1} : a >= 1, d_i b - <a, d_i l_i> >= 1}, held in
/// machine integers for the scan.
struct OmegaSystem {
  std::size_t n = 0;
  std::vector<std::vector<long long>> scaled; ///< d_i l_i
  std::vector<long long> d;

  explicit OmegaSystem(const MaximalVertexData &m) {
    n = m.maximal_vertices.empty() ? 0 : m.maximal_vertices.front().size();
    for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i) {
      std::vector<long long> row(n);
      for (std::size_t j = 0; j < n; ++j) {
        Rational x = m.maximal_vertices[i][j] * Rational(m.denominators[i]);
        row[j] = narrow(numerator(x));
      }
      scaled.push_back(row);
      d.push_back(narrow(m.denominators[i]));
    }
  }

  static long long narrow(const Integer &x) {
    if (abs_value(x) > Integer(1'000'000'000))
      throw ResourceError("omega scan: coefficient too large for the lattice scan", "omega-scan-cap");
    return x.convert_to<long long>();
  }

  bool contains(const std::vector<long long> &a, long long b) const {
    for (auto x : a)
      if (x < 1) return false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += scaled[i][j] * a[j];
      if (d[i] * b - s < 1) return false;
    }
    return true;
  }

  /// Calls f(a) for every a with (a, b) in omega.
  template <class F> void for_each_at_degree(long long b, std::size_t cap, std::size_t &visited, F f) const {
    std::vector<long long> a(n, 1), partial(d.size(), 0);
    // tail[j][i]: contribution of coordinates j.. at their minimum 1
    std::vector<std::vector<long long>> tail(n + 1, std::vector<long long>(d.size(), 0));
    for (std::size_t j = n; j-- > 0;)
      for (std::size_t i = 0; i < d.size(); ++i) tail[j][i] = tail[j + 1][i] + scaled[i][j];
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (++visited > cap)
        throw ResourceError("omega scan visited more than " + std::to_string(cap) + " points",
                            "omega-scan-cap");
      if (j == n) {
        f(a);
        return;
      }
      bool grows = false;
      for (std::size_t i = 0; i < d.size(); ++i) grows = grows || scaled[i][j] > 0;
      if (!grows) throw DomainError("omega polyhedron is unbounded in coordinate " + std::to_string(j + 1));
      for (long long v = 1;; ++v) {
        bool ok = true;
        for (std::size_t i = 0; i < d.size() && ok; ++i)
          ok = partial[i] + scaled[i][j] * v + tail[j + 1][i] <= d[i] * b - 1;
        if (!ok) break;
        a[j] = v;
        for (std::size_t i = 0; i < d.size(); ++i) partial[i] += scaled[i][j] * v;
        rec(j + 1);
        for (std::size_t i = 0; i < d.size(); ++i) partial[i] -= scaled[i][j] * v;
      }
      a[j] = 1;
    };
    rec(0);
  }
};

} // namespace detail

/// Lattice points of the omega polyhedron in degree b.
inline std::vector<IntVector> omega_points_at_degree(const MaximalVertexData &m, const Integer &b,
                                                     std::size_t cap = 50'000'000) {
  detail::OmegaSystem sys(m);
  std::vector<IntVector> out;
  std::size_t visited = 0;
  const long long bb = detail::OmegaSystem::narrow(b);
  sys.for_each_at_degree(bb, cap, visited, [&](const std::vector<long long> &a) {
    IntVector v(a.begin(), a.end());
    v.push_back(Integer(bb));
    out.push_back(v);
  });
  return out;
}

inline Integer a_invariant_formula(const MaximalVertexData &m) {
  Integer b0 = 0;
  for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i)
    b0 = std::max(b0, ceil_of(Rational(1, m.denominators[i]) + m.norms[i]));
  return -b0;
}

/// Canonical module of S = K[x^w t : w in the down-set], for A whose system
/// x >= 0, xA <= 1 has the rounding property (S normal).
inline CanonicalModuleReport canonical_module_S(const IntMatrix &a, const CanonicalOptions &opt = {}) {
  require_valid_matrix(a);
  auto spec = build_algebra(AlgebraKind::S_downset, a, opt.down_set_cap);
  if (!is_normal(spec, opt.hilbert).verdict)
    throw DomainError("system lacks rounding property: x >= 0, xA <= 1 (S is not normal)");
  const std::size_t n = a.rows();
  CanonicalModuleReport r;
  r.vertex_data = maximal_vertex_data(dd_convert(packing_polytope(a)));
  const auto &m = r.vertex_data;
  r.a_invariant = a_invariant_formula(m);
  Integer floor_max = 0, dmax = 1;
  for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i) {
    floor_max = std::max(floor_max, floor_of(m.norms[i]));
    dmax = std::max(dmax, m.denominators[i]);
    if (m.denominators[i] != 1 && m.denominators[i] != 2) r.denominators_one_or_two = false;
  }
  r.a_invariant_floor_form = -(floor_max + 1);
  r.floor_form_differs = r.a_invariant_floor_form != r.a_invariant;

  detail::OmegaSystem sys(m);
  std::vector<std::vector<long long>> down;
  for (const auto &g : spec.generators) {
    std::vector<long long> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = g[j].convert_to<long long>();
    down.push_back(w);
  }
  // (a, b) is a minimal generator iff no (a - w, b - 1) stays in omega
  auto minimal = [&](const std::vector<long long> &pt, long long b) {
    std::vector<long long> x(n);
    for (const auto &w : down) {
      for (std::size_t j = 0; j < n; ++j) x[j] = pt[j] - w[j];
      if (sys.contains(x, b - 1)) return false;
    }
    return true;
  };

  long long bound = detail::OmegaSystem::narrow(-r.a_invariant + Integer(n) * dmax);
  long long scanned_to = 0;
  for (;;) {
    bool last_has_generator = false;
    for (long long b = scanned_to + 1; b <= bound; ++b)
      sys.for_each_at_degree(b, opt.scan_cap, r.points_scanned, [&](const std::vector<long long> &pt) {
        if (!minimal(pt, b)) return;
        IntVector g(pt.begin(), pt.end());
        g.push_back(Integer(b));
        r.omega_generators.push_back(g);
        if (b == bound) last_has_generator = true;
      });
    scanned_to = bound;
    if (!last_has_generator) break;
    bound *= 2;
  }
  r.degree_bound = Integer(bound);
  std::sort(r.omega_generators.begin(), r.omega_generators.end());
  if (r.omega_generators.empty()) throw SoundnessError("omega scan found no generator");
  Integer least = r.omega_generators.front().back();
  for (const auto &g : r.omega_generators) least = std::min(least, g.back());
  r.a_invariant_from_omega = -least;
  if (r.a_invariant_from_omega != r.a_invariant)
    throw SoundnessError("a-invariant: formula gives " + to_string(r.a_invariant) +
                         ", least omega degree gives " + to_string(r.a_invariant_from_omega));
  r.gorenstein = r.omega_generators.size() == 1;

  bool sufficient = true, integral = true;
  for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i) {
    if (Rational(-r.a_invariant) != Rational(1, m.denominators[i]) + m.norms[i]) sufficient = false;
    if (m.denominators[i] != 1) integral = false;
  }
  if (sufficient && !r.gorenstein)
    throw SoundnessError("vertex-sum condition holds but omega is not principal");
  if (sufficient) r.gorenstein_route = GorensteinRoute::vertex_sum_sufficient;
  else if (integral) r.gorenstein_route = GorensteinRoute::integral_polytope;
  return r;
}

struct GorensteinTests {
  bool principal_omega = false;
  Integer a_invariant;
  bool sufficient_condition = false;        ///< -a(S) = 1/d_i + |l_i| for all i
  bool integral_polytope = false;
  std::optional<bool> integral_criterion;   ///< a(S) = -(|l_i| + 1) for all i, when P integral
  std::optional<bool> necessary_condition;  ///< when Gorenstein and max|l_i| integral
};

/// The sufficient, integral-case and necessary conditions, each checked
/// against the generator count of omega.
inline GorensteinTests gorenstein_tests(const IntMatrix &a, const CanonicalOptions &opt = {}) {
  auto rep = canonical_module_S(a, opt);
  const auto &m = rep.vertex_data;
  GorensteinTests t;
  t.principal_omega = rep.gorenstein;
  t.a_invariant = rep.a_invariant;
  t.sufficient_condition = rep.gorenstein_route == GorensteinRoute::vertex_sum_sufficient;
  t.integral_polytope = std::all_of(m.denominators.begin(), m.denominators.end(),
                                    [](const Integer &d) { return d == 1; }) &&
                        is_integral_polytope(dd_convert(packing_polytope(a)));
  if (t.sufficient_condition && !t.principal_omega)
    throw SoundnessError("vertex-sum condition holds but omega is not principal");
  if (t.integral_polytope) {
    bool all = true;
    for (const auto &norm : m.norms) all = all && Rational(-t.a_invariant) == norm + 1;
    t.integral_criterion = all;
    if (all != t.principal_omega)
      throw SoundnessError("integral polytope: a(S) = -(|l_i|+1) criterion disagrees with omega");
  }
  Rational c0 = 0;
  for (const auto &norm : m.norms) c0 = std::max(c0, norm);
  if (t.principal_omega && is_integral(c0)) {
    bool holds = true;
    for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i)
      if (m.denominators[i] == 1 && m.norms[i] != c0) holds = false;
    t.necessary_condition = holds;
    if (!holds) throw SoundnessError("Gorenstein S with an integral maximal vertex of smaller norm");
  }
  return t;
}

// --- general normal subrings -----------------------------------------------

struct DualConeCanonical {
  RatVector grading;
  std::vector<IntVector> dual_basis; ///< integral basis c_j of the dual cone (its extreme rays)
  IntVector b_vector;                ///< 0 if the cone lies in c_j^perp, else -1
  std::vector<IntVector> omega_normals; ///< omega = {x : <c_j, x> >= -b_j}
  IntVector omega_offsets;              ///< the -b_j
  std::vector<RatVector> omega_vertices;
  Integer a_invariant;
  IntVector a_invariant_point; ///< a lattice point of omega of least degree
};

/// omega and a-invariant of K[F] from an integral basis of the dual cone,
/// for generators forming a Hilbert basis of Z^n ∩ cone and a grading x0
/// with <x0, v> = 1 on every generator.
inline DualConeCanonical canonical_via_dual_cone(const std::vector<IntVector> &generators,
                                                 const RatVector &x0, const HilbertOptions &opt = {},
                                                 std::size_t point_cap = 1'000'000) {
  if (generators.empty()) throw DomainError("canonical_via_dual_cone: no generators");
  const std::size_t n = generators.front().size();
  if (x0.size() != n) throw DomainError("canonical_via_dual_cone: grading of wrong dimension");
  for (const auto &v : generators)
    if (dot(x0, v) != 1)
      throw DomainError("canonical_via_dual_cone: grading hypothesis fails, <x0, " + to_string(v) +
                        "> != 1");
  if (!is_hilbert_basis(make_cone(generators), opt).verdict)
    throw DomainError("canonical_via_dual_cone: normality hypothesis fails, generators are not a "
                      "Hilbert basis of Z^n ∩ cone");
  DualConeCanonical out;
  out.grading = x0;
  // primitive facet normals, plus both signs of every flat direction
  auto dual = dual_cone(generators, n);
  out.dual_basis = dual.rays;
  for (const auto &l : dual.lineality) {
    out.dual_basis.push_back(l);
    IntVector m = l;
    for (auto &x : m) x = -x;
    out.dual_basis.push_back(m);
  }
  std::sort(out.dual_basis.begin(), out.dual_basis.end());
  std::vector<Inequality> h;
  for (const auto &c : out.dual_basis) {
    bool flat = std::all_of(generators.begin(), generators.end(),
                            [&](const IntVector &v) { return dot(c, v) == 0; });
    Integer b = flat ? 0 : -1;
    out.b_vector.push_back(b);
    out.omega_normals.push_back(c);
    out.omega_offsets.push_back(-b);
    RatVector neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -Rational(c[j]);
    h.push_back({neg, Rational(b)});
  }
  auto omega = dd_convert(PolyhedronRep::from_inequalities(n, h));
  if (omega.empty) throw DomainError("canonical_via_dual_cone: omega polyhedron is empty");
  out.omega_vertices = omega.vertices;
  // the grading is positive on the recession cone, so slicing by degree
  // gives polytopes; scan degrees upward from the LP minimum
  Rational lo = dot(x0, omega.vertices.front());
  for (const auto &v : omega.vertices) lo = std::min(lo, dot(x0, v));
  for (Integer t = ceil_of(lo);; ++t) {
    if (t > ceil_of(lo) + Integer(4 * n + 8))
      throw ResourceError("canonical_via_dual_cone: no lattice point near the LP minimum", "ip-box");
    auto slice = omega;
    slice.has_v = false;
    slice.inequalities.push_back({x0, Rational(t)});
    auto pts = lattice_points(slice, point_cap);
    if (pts.empty()) continue;
    Rational best = dot(x0, pts.front());
    IntVector arg = pts.front();
    for (const auto &p : pts)
      if (dot(x0, p) < best) {
        best = dot(x0, p);
        arg = p;
      }
    if (!is_integral(best)) throw SoundnessError("omega point of non-integral degree");
    out.a_invariant = -numerator(best);
    out.a_invariant_point = arg;
    return out;
  }
}

// --- complete intersection ---------------------------------------------------

struct CompleteIntersectionReport {
  bool bipartite = false;
  std::size_t primitive_cycles = 0;
  long long cycle_rank = 0; ///< q - n + 1
  bool verdict = false;
};

/// K[Ft ∪ {t}] of a connected graph whose system xA <= 1 has the rounding
/// property is a complete intersection iff G is bipartite and the number of
/// chordless cycles equals q - n + 1.
inline CompleteIntersectionReport complete_intersection_check(const Graph &g,
                                                              const HilbertOptions &opt = {}) {
  if (!g.connected()) throw DomainError("complete_intersection_check: graph is not connected");
  if (!ehrhart_equality(incidence_matrix(g), opt))
    throw DomainError("system lacks rounding property: xA <= 1 (graph is not bipartite)");
  CompleteIntersectionReport r;
  r.bipartite = g.bipartite();
  r.primitive_cycles = primitive_cycles(g).size();
  r.cycle_rank = (long long)(g.edge_count()) - g.vertex_count() + 1;
  r.verdict = r.bipartite && (long long)(r.primitive_cycles) == r.cycle_rank;
  return r;
}

// --- graph observations ----------------------------------------------------------

struct GorensteinObservation {
  bool gorenstein = false;
  bool vertex_sum_condition = false;
  bool agrees = false;   ///< gorenstein == vertex_sum_condition
  bool unmixed = false;  ///< all minimal vertex covers have one size
  bool denominators_one_or_two = true;
  Integer a_invariant;
};

/// Records, for a connected graph with S normal, whether Gorenstein-ness
/// matches the vertex-sum condition. Nothing is asserted.
inline GorensteinObservation observe_gorenstein(const Graph &g, const CanonicalOptions &opt = {}) {
  if (!g.connected()) throw DomainError("observe_gorenstein: graph is not connected");
  auto rep = canonical_module_S(incidence_matrix(g), opt);
  GorensteinObservation o;
  o.gorenstein = rep.gorenstein;
  o.vertex_sum_condition = rep.gorenstein_route == GorensteinRoute::vertex_sum_sufficient;
  o.agrees = o.gorenstein == o.vertex_sum_condition;
  auto covers = alexander_dual(g.as_clutter()).edges();
  o.unmixed = std::all_of(covers.begin(), covers.end(),
                          [&](const VertexSet &c) { return c.size() == covers.front().size(); });
  o.denominators_one_or_two = rep.denominators_one_or_two;
  o.a_invariant = rep.a_invariant;
  return o;
}

} // namespace monalg
