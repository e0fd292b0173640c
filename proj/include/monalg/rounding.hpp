#pragma once

// Integer rounding properties of
//   leq1:  x >= 0; xA <= 1   dual: min |y|, y >= 0, Ay >= a
//   geq1:  x >= 0; xA >= 1   dual: max |y|, y >= 0, Ay <= a
//   eq1:   xA <= 1           dual: min |y|, y >= 0, Ay  = a
// and the max-flow min-cut property, each decided by a normality criterion
// and optionally cross-checked by exhaustive LP/IP comparison over a box.

#include "monalg/algebras.hpp"

#include <cmath>
#include <limits>

namespace monalg {

// --- exact LP / IP ------------------------------------------------------------

enum class LpStatus { optimal, infeasible, unbounded };
enum class Sense { minimize, maximize };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value = 0;
  RatVector point;
};

inline constexpr std::size_t kDefaultLpDimensionCap = 12;

/// Optimum of <objective, y> over a polyhedron given by inequalities, by
/// enumerating its vertices and recession directions.
inline LpResult lp_opt_exact(const RatVector &objective, Sense sense, const PolyhedronRep &feasible,
                             std::size_t dim_cap = kDefaultLpDimensionCap) {
  if (feasible.ambient_dim > dim_cap)
    throw ResourceError("LP dimension " + std::to_string(feasible.ambient_dim) +
                            " exceeds cap " + std::to_string(dim_cap),
                        "lp-dimension-cap");
  if (objective.size() != feasible.ambient_dim) throw DomainError("objective of wrong dimension");
  auto p = dd_convert(feasible);
  LpResult r;
  if (p.empty) return r;
  const int s = sense == Sense::maximize ? 1 : -1;
  for (const auto &l : p.lines)
    if (dot(objective, l) != 0) {
      r.status = LpStatus::unbounded;
      return r;
    }
  for (const auto &d : p.rays)
    if (s * dot(objective, d) > 0) {
      r.status = LpStatus::unbounded;
      return r;
    }
  r.status = LpStatus::optimal;
  bool first = true;
  for (const auto &v : p.vertices) {
    Rational val = dot(objective, v);
    if (first || s * val > s * r.value) {
      r.value = val;
      r.point = v;
      first = false;
    }
  }
  return r;
}

struct IpResult {
  LpStatus status = LpStatus::infeasible;
  Integer value = 0;
  IntVector point;
  IntVector box_lo, box_hi; ///< search region actually enumerated
};

/// Integer optimum over the lattice points of a polyhedron. The search box is
/// the polytope itself when bounded; otherwise a rounded LP optimum is used
/// as an incumbent to cut the objective, which must then bound the region.
inline IpResult ip_opt_exact(const RatVector &objective, Sense sense, const PolyhedronRep &feasible,
                             std::size_t point_cap = 1'000'000) {
  const std::size_t n = feasible.ambient_dim;
  IpResult res;
  auto lp = lp_opt_exact(objective, sense, feasible, std::numeric_limits<std::size_t>::max());
  if (lp.status == LpStatus::infeasible) return res;
  auto region = dd_convert(feasible);
  if (!region.bounded()) {
    std::optional<Rational> bound;
    if (lp.status == LpStatus::optimal)
      for (int mode = 0; mode < 2 && !bound; ++mode) {
        RatVector x(n);
        for (std::size_t j = 0; j < n; ++j)
          x[j] = mode == 0 ? Rational(ceil_of(lp.point[j])) : Rational(floor_of(lp.point[j]));
        if (region.contains(x)) bound = dot(objective, x);
      }
    if (!bound)
      throw ResourceError("ip_opt_exact: no search box derivable from the LP", "ip-box");
    auto cut = region;
    cut.has_v = false;
    RatVector c = objective;
    Rational off = *bound;
    if (sense == Sense::maximize) {
      for (auto &x : c) x = -x;
      off = -off;
    }
    cut.inequalities.push_back({c, off});
    region = dd_convert(cut);
    if (!region.bounded())
      throw ResourceError("ip_opt_exact: objective cut leaves an unbounded region", "ip-box");
  }
  auto pts = lattice_points(region, point_cap);
  if (!region.vertices.empty()) {
    res.box_lo.assign(n, Integer(0));
    res.box_hi.assign(n, Integer(0));
    for (std::size_t j = 0; j < n; ++j) {
      res.box_lo[j] = ceil_of(region.vertices[0][j]);
      res.box_hi[j] = floor_of(region.vertices[0][j]);
      for (const auto &v : region.vertices) {
        res.box_lo[j] = std::min(res.box_lo[j], ceil_of(v[j]));
        res.box_hi[j] = std::max(res.box_hi[j], floor_of(v[j]));
      }
    }
  }
  const int s = sense == Sense::maximize ? 1 : -1;
  for (const auto &x : pts) {
    Rational val = dot(objective, x);
    if (res.status != LpStatus::optimal || s * val > s * Rational(res.value)) {
      if (!is_integral(val)) throw DomainError("ip_opt_exact: objective must be integral");
      res.status = LpStatus::optimal;
      res.value = numerator(val);
      res.point = x;
    }
  }
  return res;
}

/// {y in R^q : y >= 0, sign * (A y - a) >= 0}; sign +1 for Ay >= a, -1 for Ay <= a.
inline PolyhedronRep column_system(const IntMatrix &a, const IntVector &rhs, int sign,
                                   bool equality = false) {
  const std::size_t q = a.cols();
  std::vector<Inequality> h;
  for (std::size_t j = 0; j < q; ++j) {
    RatVector e(q, Rational(0));
    e[j] = -1;
    h.push_back({e, 0});
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RatVector row(q);
    for (std::size_t j = 0; j < q; ++j) row[j] = a(i, j);
    RatVector neg = row;
    for (auto &x : neg) x = -x;
    if (equality || sign > 0) h.push_back({neg, Rational(-rhs[i])});
    if (equality || sign < 0) h.push_back({row, Rational(rhs[i])});
  }
  return PolyhedronRep::from_inequalities(q, std::move(h));
}

// --- rounding systems ---------------------------------------------------------

enum class RoundingSystem { leq1, geq1, eq1 };

inline constexpr std::string_view system_name(RoundingSystem s) {
  switch (s) {
  case RoundingSystem::leq1: return "leq1";
  case RoundingSystem::geq1: return "geq1";
  case RoundingSystem::eq1: return "eq1";
  }
  return "?";
}

inline RoundingSystem parse_system(std::string_view s) {
  for (auto k : {RoundingSystem::leq1, RoundingSystem::geq1, RoundingSystem::eq1})
    if (system_name(k) == s) return k;
  throw DomainError("unknown system '" + std::string(s) + "' (expected leq1, geq1 or eq1)");
}

struct RoundingCounterexample {
  IntVector a;
  Rational lp_value;
  Integer rounded;
  std::optional<Integer> ip_value; ///< nullopt: integer program infeasible
};

/// Theorem route for eq1 through K[F] normality and the torsion of Z^n/ZA:
/// rounding implies both; both imply rounding when all columns have equal sum.
struct TorsionRoute {
  bool kf_normal = false;
  IntVector torsion;
  bool uniform_columns = false;
};

struct RoundingVerdict {
  RoundingSystem system = RoundingSystem::leq1;
  bool theorem_route = false;
  std::optional<IntVector> theorem_witness; ///< lattice point missing from the semigroup
  std::optional<bool> oracle_route;
  bool oracle_inconclusive = false; ///< theorem false, no counterexample inside the box
  std::optional<int> oracle_box;
  std::size_t oracle_points = 0;
  std::optional<RoundingCounterexample> counterexample;
  std::optional<TorsionRoute> torsion_route;
};

struct RoundingOptions {
  std::optional<int> oracle_box;
  std::size_t oracle_state_cap = 5'000'000;
  std::size_t down_set_cap = kDefaultDownSetCap;
  HilbertOptions hilbert;
};

namespace detail {

/// Flat index of a in [0, box]^n; index order is lexicographic order.
struct BoxIndex {
  std::size_t n, side;
  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= side;
    return s;
  }
  std::vector<int> decode(std::size_t k) const {
    std::vector<int> a(n);
    for (std::size_t i = n; i-- > 0;) {
      a[i] = int(k % side);
      k /= side;
    }
    return a;
  }
  std::size_t encode(const std::vector<int> &a) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = k * side + std::size_t(a[i]);
    return k;
  }
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Integer optima for every a in the box:
///   leq1: min |y|, Ay >= a, y in N^q
///   geq1: max |y|, Ay <= a, y in N^q
///   eq1:  min |y|, Ay  = a, y in N^q (kUnreachable if none)
inline std::vector<int> integer_optima(const IntMatrix &a, RoundingSystem sys, int box,
                                       std::size_t cap) {
  const std::size_t n = a.rows(), q = a.cols();
  BoxIndex bx{n, std::size_t(box + 1)};
  if (box < 0) throw DomainError("oracle box must be non-negative");
  if (std::pow(double(box + 1), double(n)) > double(cap))
    throw ResourceError("oracle box " + std::to_string(box) + "^" + std::to_string(n) +
                            " exceeds state cap " + std::to_string(cap),
                        "oracle-state-cap");
  std::vector<std::vector<int>> cols(q, std::vector<int>(n));
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = a(i, j).convert_to<int>();
  std::vector<int> f(bx.size(), 0);
  std::vector<int> r(n);
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto x = bx.decode(k);
    if (k == 0) {
      f[k] = 0;
      continue;
    }
    int best = sys == RoundingSystem::geq1 ? 0 : kUnreachable;
    for (const auto &v : cols) {
      bool fits = true, moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (sys == RoundingSystem::leq1) {
          r[i] = std::max(x[i] - v[i], 0);
          if (r[i] != x[i]) moved = true;
        } else {
          r[i] = x[i] - v[i];
          if (r[i] < 0) fits = false;
          moved = true;
        }
      }
      if (!fits || !moved) continue;
      int sub = f[bx.encode(r)];
      if (sys == RoundingSystem::geq1) best = std::max(best, sub + 1);
      else if (sub != kUnreachable) best = std::min(best, sub + 1);
    }
    f[k] = best;
  }
  return f;
}

} // namespace detail

/// LP optimum of the system at right-hand side a, via the dual polyhedron:
///   leq1: max over vertices l of P of <a, l>
///   geq1: min over vertices x of Q(A) of <a, x>
///   eq1:  min t with (a, t) in cone{(v_i,1),(0,1)}; nullopt if a not in cone(A)
class RoundingLp {
public:
  RoundingLp(const IntMatrix &a, RoundingSystem sys) : sys_(sys), n_(a.rows()) {
    switch (sys) {
    case RoundingSystem::leq1:
      verts_ = maximal_vertex_data(dd_convert(packing_polytope(a))).maximal_vertices;
      break;
    case RoundingSystem::geq1:
      verts_ = dd_convert(covering_polyhedron(a)).vertices;
      break;
    case RoundingSystem::eq1: {
      auto spec = build_algebra(AlgebraKind::ehrhart, a);
      auto dual = dual_cone(spec.generators, n_ + 1);
      facets_ = dual.rays;
      for (const auto &l : dual.lineality) {
        facets_.push_back(l);
        IntVector m = l;
        for (auto &x : m) x = -x;
        facets_.push_back(m);
      }
      break;
    }
    }
  }

  std::optional<Rational> value(const IntVector &a) const {
    if (sys_ == RoundingSystem::eq1) {
      Rational lo = 0;
      for (const auto &f : facets_) {
        Integer ca = 0;
        for (std::size_t i = 0; i < n_; ++i) ca += f[i] * a[i];
        const Integer &c0 = f[n_];
        if (c0 == 0) {
          if (ca < 0) return std::nullopt;
        } else if (c0 > 0) {
          lo = std::max(lo, Rational(-ca, c0));
        } else {
          throw SoundnessError("cone over B has a facet bounding t from above");
        }
      }
      return lo;
    }
    std::optional<Rational> best;
    for (const auto &v : verts_) {
      Rational x = dot(v, a);
      if (!best || (sys_ == RoundingSystem::leq1 ? x > *best : x < *best)) best = x;
    }
    return best;
  }

private:
  RoundingSystem sys_;
  std::size_t n_;
  std::vector<RatVector> verts_;
  std::vector<IntVector> facets_;
};

/// Normality route only.
inline HilbertCertificate rounding_theorem_certificate(RoundingSystem sys, const IntMatrix &a,
                                                       const RoundingOptions &opt = {}) {
  switch (sys) {
  case RoundingSystem::leq1:
    return is_normal(build_algebra(AlgebraKind::S_downset, a, opt.down_set_cap), opt.hilbert);
  case RoundingSystem::geq1:
    return is_normal(build_algebra(AlgebraKind::rees, a), opt.hilbert);
  case RoundingSystem::eq1:
    return ehrhart_equality_certificate(a, opt.hilbert);
  }
  throw DomainError("unknown system");
}

/// Compares the rounded LP optimum with the integer optimum for every a in
/// [0, box]^n with finite LP value; the first failure is returned.
inline std::optional<RoundingCounterexample> rounding_oracle(RoundingSystem sys, const IntMatrix &a,
                                                             int box, std::size_t cap,
                                                             std::size_t *probed = nullptr) {
  RoundingLp lp(a, sys);
  auto ip = detail::integer_optima(a, sys, box, cap);
  detail::BoxIndex bx{a.rows(), std::size_t(box + 1)};
  std::size_t count = 0;
  for (std::size_t k = 0; k < ip.size(); ++k) {
    auto xs = bx.decode(k);
    IntVector av(xs.begin(), xs.end());
    auto val = lp.value(av);
    if (!val) continue;
    ++count;
    Integer rounded = sys == RoundingSystem::geq1 ? floor_of(*val) : ceil_of(*val);
    std::optional<Integer> got;
    if (ip[k] != detail::kUnreachable) got = Integer(ip[k]);
    if (!got || *got != rounded) {
      if (probed) *probed = count;
      return RoundingCounterexample{av, *val, rounded, got};
    }
  }
  if (probed) *probed = count;
  return std::nullopt;
}

inline bool all_columns_equal_sum(const IntMatrix &a) {
  auto cols = a.column_list();
  for (const auto &c : cols)
    if (sum_of(c) != sum_of(cols.front())) return false;
  return true;
}

inline RoundingVerdict irp_check(RoundingSystem sys, const IntMatrix &a,
                                 const RoundingOptions &opt = {}) {
  require_valid_matrix(a);
  RoundingVerdict v;
  v.system = sys;
  auto cert = rounding_theorem_certificate(sys, a, opt);
  v.theorem_route = cert.verdict;
  v.theorem_witness = cert.witness;

  if (sys == RoundingSystem::eq1) {
    TorsionRoute t;
    t.kf_normal = is_normal(build_algebra(AlgebraKind::kf, a), opt.hilbert).verdict;
    t.torsion = torsion_of_quotient(a);
    t.uniform_columns = all_columns_equal_sum(a);
    const bool both = t.kf_normal && t.torsion.empty();
    if (v.theorem_route && !both)
      throw SoundnessError("eq1 rounding holds but K[F] normality / torsion-freeness fails");
    if (t.uniform_columns && both && !v.theorem_route)
      throw SoundnessError("eq1: uniform columns, K[F] normal and torsion-free, yet B is not a "
                           "Hilbert basis");
    v.torsion_route = t;
  }

  if (opt.oracle_box) {
    v.oracle_box = *opt.oracle_box;
    v.counterexample = rounding_oracle(sys, a, *opt.oracle_box, opt.oracle_state_cap,
                                       &v.oracle_points);
    v.oracle_route = !v.counterexample.has_value();
    if (v.theorem_route && v.counterexample)
      throw SoundnessError(std::string("rounding ") + std::string(system_name(sys)) +
                           ": normality criterion holds but the oracle found a counterexample at a = " +
                           to_string(v.counterexample->a));
    if (!v.theorem_route && !v.counterexample) v.oracle_inconclusive = true;
  }
  return v;
}

// --- max-flow min-cut -----------------------------------------------------------

struct MfmcCounterexample {
  IntVector a;
  Rational lp_value;
  Integer min_cover;  ///< min <a,x> over integral x in Q(A)
  Integer max_pack;   ///< max |y| over y in N^q with Ay <= a
};

struct MfmcVerdict {
  bool verdict = false;
  bool q_integral = false;
  bool rees_normal = false;
  std::vector<RatVector> fractional_vertices; ///< of Q(A)
  std::optional<IntVector> rees_witness;
  std::optional<bool> oracle_route;
  bool oracle_inconclusive = false;
  std::optional<int> oracle_box;
  std::optional<MfmcCounterexample> counterexample;
};

inline void require_zero_one(const IntMatrix &a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && a(i, j) != 1)
        throw DomainError("entry at row " + std::to_string(i + 1) + ", column " +
                          std::to_string(j + 1) + " is not 0/1");
}

inline MfmcVerdict mfmc_check(const IntMatrix &a, const RoundingOptions &opt = {}) {
  require_valid_matrix(a);
  require_zero_one(a);
  const std::size_t n = a.rows();
  MfmcVerdict v;
  auto q = dd_convert(covering_polyhedron(a));
  v.fractional_vertices = fractional_vertices(q);
  v.q_integral = v.fractional_vertices.empty();
  auto cert = is_normal(build_algebra(AlgebraKind::rees, a), opt.hilbert);
  v.rees_normal = cert.verdict;
  v.rees_witness = cert.witness;
  v.verdict = v.q_integral && v.rees_normal;

  if (opt.oracle_box) {
    const int box = *opt.oracle_box;
    v.oracle_box = box;
    RoundingLp lp(a, RoundingSystem::geq1);
    auto pack = detail::integer_optima(a, RoundingSystem::geq1, box, opt.oracle_state_cap);
    // 0/1 covers: an integral optimum of min <a,x> over Q(A) with a >= 0 can
    // be taken 0/1
    std::vector<std::vector<int>> covers;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      bool ok = true;
      for (std::size_t j = 0; j < a.cols() && ok; ++j) {
        bool hit = false;
        for (std::size_t i = 0; i < n; ++i)
          if (((mask >> i) & 1) && a(i, j) == 1) hit = true;
        ok = hit;
      }
      if (!ok) continue;
      std::vector<int> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = int((mask >> i) & 1);
      covers.push_back(c);
    }
    detail::BoxIndex bx{n, std::size_t(box + 1)};
    for (std::size_t k = 0; k < pack.size() && !v.counterexample; ++k) {
      auto xs = bx.decode(k);
      IntVector av(xs.begin(), xs.end());
      Rational val = *lp.value(av);
      int cover = std::numeric_limits<int>::max();
      for (const auto &c : covers) {
        int s = 0;
        for (std::size_t i = 0; i < n; ++i) s += c[i] * xs[i];
        cover = std::min(cover, s);
      }
      if (Rational(cover) != val || Rational(pack[k]) != val)
        v.counterexample = MfmcCounterexample{av, val, Integer(cover), Integer(pack[k])};
    }
    v.oracle_route = !v.counterexample.has_value();
    if (v.verdict && v.counterexample)
      throw SoundnessError("MFMC: Q(A) integral and R[It] normal, but the oracle failed at a = " +
                           to_string(v.counterexample->a));
    if (!v.verdict && !v.counterexample) v.oracle_inconclusive = true;
  }
  return v;
}

} // namespace monalg
