#pragma once

// Exact double description for cones {x : <a_j, x> >= 0} and rational
// polyhedra, plus the polytopes attached to a non-negative matrix A:
//   P    = {x >= 0 : xA <= 1}
//   Q(A) = {x >= 0 : xA >= 1}
//   T(P) = conv(down-set of the columns)        (antiblocker)
//   B(Q) = R_+^n + conv(columns)                (blocker)

#include "monalg/matrix.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_set>

namespace monalg {

/// Extreme rays and a lineality basis of a polyhedral cone.
struct ConeGenerators {
  std::vector<IntVector> rays;      ///< primitive, lexicographically sorted
  std::vector<IntVector> lineality; ///< primitive basis, may be empty
};

namespace detail {

class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  Bits operator&(const Bits &o) const {
    Bits r(*this);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool contains(const Bits &o) const { // o ⊆ this
    for (std::size_t i = 0; i < w_.size(); ++i)
      if ((o.w_[i] & ~w_[i]) != 0) return false;
    return true;
  }

private:
  std::vector<std::uint64_t> w_;
};

template <class T> void primitive_in_place(std::vector<T> &v) {
  T g = content(v);
  if (g > 1)
    for (auto &x : v) x /= g;
}

template <class T>
ConeGenerators double_description(const std::vector<std::vector<T>> &cons,
                                  std::size_t dim) {
  const std::size_t m = cons.size();
  std::vector<std::vector<T>> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector<T>(dim, i));
  std::vector<std::vector<T>> rays;
  std::vector<Bits> zeros;

  for (std::size_t k = 0; k < m; ++k) {
    const auto &a = cons[k];
    std::size_t l0 = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        l0 = i;
        break;
      }
    if (l0 < lin.size()) {
      // the constraint cuts the lineality space: l0 becomes a ray
      std::vector<T> piv = lin[l0];
      T s = dot(a, piv);
      if (s < 0) {
        for (auto &x : piv) x = -x;
        s = -s;
      }
      lin.erase(lin.begin() + l0);
      for (auto &l : lin) {
        T t = dot(a, l);
        if (t == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) l[j] = s * l[j] - t * piv[j];
        primitive_in_place(l);
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        T t = dot(a, rays[r]);
        if (t != 0) {
          for (std::size_t j = 0; j < dim; ++j) rays[r][j] = s * rays[r][j] - t * piv[j];
          primitive_in_place(rays[r]);
        }
        zeros[r].set(k);
      }
      Bits z(m);
      for (std::size_t j = 0; j < k; ++j) z.set(j);
      rays.push_back(std::move(piv));
      zeros.push_back(std::move(z));
      continue;
    }

    std::vector<T> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      if (val[r] > 0) pos.push_back(r);
      else if (val[r] < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (val[r] == 0) zeros[r].set(k);
      continue;
    }
    const long need = long(dim) - long(lin.size()) - 2;
    std::vector<std::vector<T>> next;
    std::vector<Bits> next_zeros;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      next.push_back(rays[r]);
      Bits z = zeros[r];
      if (val[r] == 0) z.set(k);
      next_zeros.push_back(std::move(z));
    }
    for (auto p : pos)
      for (auto n : neg) {
        Bits common = zeros[p] & zeros[n];
        if (long(common.count()) < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != n && zeros[r].contains(common)) adjacent = false;
        if (!adjacent) continue;
        std::vector<T> v(dim);
        for (std::size_t j = 0; j < dim; ++j)
          v[j] = val[p] * rays[n][j] - val[n] * rays[p][j];
        primitive_in_place(v);
        common.set(k);
        next.push_back(std::move(v));
        next_zeros.push_back(std::move(common));
      }
    rays = std::move(next);
    zeros = std::move(next_zeros);
  }

  ConeGenerators out;
  out.rays = to_integers(rays);
  out.lineality = to_integers(lin);
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

} // namespace detail

/// Cone {x in R^dim : <c, x> >= 0 for c in constraints}. Constraints are
/// processed in lexicographic order.
inline ConeGenerators cone_from_inequalities(std::vector<IntVector> constraints,
                                             std::size_t dim) {
  for (auto &c : constraints) {
    if (c.size() != dim) throw DomainError("constraint of wrong dimension");
    make_primitive(c);
  }
  std::sort(constraints.begin(), constraints.end());
  constraints.erase(std::unique(constraints.begin(), constraints.end()),
                    constraints.end());
  constraints.erase(std::remove_if(constraints.begin(), constraints.end(),
                                   [](const IntVector &c) { return is_zero(c); }),
                    constraints.end());
  return with_overflow_fallback([&]<class T>() {
    return detail::double_description<T>(from_integers<T>(constraints), dim);
  });
}

/// Facets of cone(generators): returns the generators of the dual cone
/// {f : <f, g> >= 0}. For a full-dimensional cone the rays are the facet
/// normals; nonempty lineality means the cone is not full-dimensional.
inline ConeGenerators dual_cone(const std::vector<IntVector> &generators,
                                std::size_t dim) {
  return cone_from_inequalities(generators, dim);
}

// --- rational polyhedra -----------------------------------------------------

/// <normal, x> <= offset
struct Inequality {
  RatVector normal;
  Rational offset;
  friend auto operator<=>(const Inequality &a, const Inequality &b) {
    if (a.normal != b.normal)
      return std::lexicographical_compare(a.normal.begin(), a.normal.end(),
                                          b.normal.begin(), b.normal.end())
                 ? std::strong_ordering::less
                 : std::strong_ordering::greater;
    if (a.offset == b.offset) return std::strong_ordering::equal;
    return a.offset < b.offset ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  }
  friend bool operator==(const Inequality &, const Inequality &) = default;
};

struct PolyhedronRep {
  std::size_t ambient_dim = 0;
  std::vector<Inequality> inequalities;
  std::vector<RatVector> vertices;
  std::vector<IntVector> rays;
  std::vector<IntVector> lines;
  bool has_h = false;
  bool has_v = false;
  bool empty = false;

  bool bounded() const { return rays.empty() && lines.empty(); }

  static PolyhedronRep from_inequalities(std::size_t dim, std::vector<Inequality> ineqs) {
    PolyhedronRep p;
    p.ambient_dim = dim;
    p.inequalities = std::move(ineqs);
    p.has_h = true;
    return p;
  }
  static PolyhedronRep from_points(std::size_t dim, std::vector<RatVector> pts,
                                   std::vector<IntVector> rays = {},
                                   std::vector<IntVector> lines = {}) {
    PolyhedronRep p;
    p.ambient_dim = dim;
    p.vertices = std::move(pts);
    p.rays = std::move(rays);
    p.lines = std::move(lines);
    p.has_v = true;
    return p;
  }

  /// Membership test against the H side.
  bool contains(const RatVector &x) const {
    for (const auto &h : inequalities)
      if (dot(h.normal, x) > h.offset) return false;
    return true;
  }
};

/// Scales (normal, offset) to a primitive integer row.
inline Inequality canonical_inequality(const RatVector &normal, const Rational &offset) {
  RatVector all = normal;
  all.push_back(offset);
  IntVector p = primitive_integer(all);
  Inequality h;
  h.offset = p.back();
  p.pop_back();
  h.normal = to_rationals(p);
  return h;
}

namespace detail {

inline void canonicalize(PolyhedronRep &p) {
  std::sort(p.vertices.begin(), p.vertices.end());
  p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
  std::sort(p.rays.begin(), p.rays.end());
  p.rays.erase(std::unique(p.rays.begin(), p.rays.end()), p.rays.end());
  std::sort(p.inequalities.begin(), p.inequalities.end());
  p.inequalities.erase(std::unique(p.inequalities.begin(), p.inequalities.end()),
                       p.inequalities.end());
}

inline void h_to_v(PolyhedronRep &p) {
  const std::size_t d = p.ambient_dim;
  std::vector<IntVector> cons;
  for (const auto &h : p.inequalities) {
    if (h.normal.size() != d) throw DomainError("inequality of wrong dimension");
    RatVector row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = -h.normal[j];
    row[d] = h.offset;
    cons.push_back(primitive_integer(row));
  }
  cons.push_back(unit_vector<Integer>(d + 1, d));
  auto cone = cone_from_inequalities(cons, d + 1);
  p.vertices.clear();
  p.rays.clear();
  p.lines.clear();
  for (const auto &r : cone.rays) {
    if (r[d] > 0) {
      RatVector v(d);
      for (std::size_t j = 0; j < d; ++j) v[j] = Rational(r[j], r[d]);
      p.vertices.push_back(std::move(v));
    } else {
      p.rays.emplace_back(r.begin(), r.end() - 1);
    }
  }
  for (const auto &l : cone.lineality) p.lines.emplace_back(l.begin(), l.end() - 1);
  p.empty = p.vertices.empty();
  if (p.empty) {
    p.rays.clear();
    p.lines.clear();
  }
  p.has_v = true;
}

inline void v_to_h(PolyhedronRep &p) {
  const std::size_t d = p.ambient_dim;
  p.inequalities.clear();
  if (p.vertices.empty()) {
    p.empty = true;
    p.rays.clear();
    p.lines.clear();
    p.inequalities.push_back({RatVector(d, Rational(0)), Rational(-1)});
    p.has_h = true;
    return;
  }
  std::vector<IntVector> gens;
  for (const auto &v : p.vertices) {
    if (v.size() != d) throw DomainError("point of wrong dimension");
    RatVector h(v);
    h.push_back(1);
    gens.push_back(primitive_integer(h));
  }
  auto lift = [&](const IntVector &r, int sign) {
    if (r.size() != d) throw DomainError("direction of wrong dimension");
    IntVector h(d + 1, Integer(0));
    for (std::size_t j = 0; j < d; ++j) h[j] = sign * r[j];
    return h;
  };
  for (const auto &r : p.rays) gens.push_back(lift(r, 1));
  for (const auto &l : p.lines) {
    gens.push_back(lift(l, 1));
    gens.push_back(lift(l, -1));
  }
  auto dual = dual_cone(gens, d + 1);
  auto emit = [&](const IntVector &f) {
    // <c, x> + c0 >= 0  ->  <-c, x> <= c0
    RatVector c(d);
    bool trivial = true;
    for (std::size_t j = 0; j < d; ++j) {
      c[j] = -f[j];
      if (f[j] != 0) trivial = false;
    }
    if (trivial) return;
    p.inequalities.push_back(canonical_inequality(c, f[d]));
  };
  for (const auto &f : dual.rays) emit(f);
  for (const auto &f : dual.lineality) {
    emit(f);
    IntVector g(f);
    for (auto &x : g) x = -x;
    emit(g);
  }
  p.has_h = true;
}

} // namespace detail

/// Fills in whichever side is missing. H input gets both sides recomputed so
/// the inequality list is irredundant; V input keeps its points reduced to
/// actual vertices via the round trip.
inline PolyhedronRep dd_convert(PolyhedronRep p) {
  if (!p.has_h && !p.has_v) throw DomainError("dd_convert: empty representation");
  if (p.has_h && p.has_v) {
    detail::canonicalize(p);
    return p;
  }
  if (p.has_h) {
    detail::h_to_v(p);
    if (!p.empty) detail::v_to_h(p);
  } else {
    detail::v_to_h(p);
    if (!p.empty) detail::h_to_v(p);
  }
  detail::canonicalize(p);
  return p;
}

/// Vertex-set equality of two bounded (or pointed) polyhedra, after DD.
inline bool same_polyhedron(const PolyhedronRep &a, const PolyhedronRep &b) {
  auto x = dd_convert(a), y = dd_convert(b);
  return x.empty == y.empty && x.vertices == y.vertices && x.rays == y.rays &&
         x.lines.size() == y.lines.size();
}

// --- polyhedra attached to a matrix ----------------------------------------

/// Validates the standing hypothesis on input matrices: entries are
/// non-negative integers, no zero row, no zero column.
inline void require_valid_matrix(const IntMatrix &a) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("matrix has no rows or columns");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0)
        throw DomainError("negative entry at row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool nz = false;
    for (std::size_t j = 0; j < a.cols(); ++j) nz = nz || a(i, j) != 0;
    if (!nz) throw DomainError("zero row " + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    bool nz = false;
    for (std::size_t i = 0; i < a.rows(); ++i) nz = nz || a(i, j) != 0;
    if (!nz) throw DomainError("zero column " + std::to_string(j + 1));
  }
}

/// H-rep of P = {x >= 0 : xA <= 1}.
inline PolyhedronRep packing_polytope(const IntMatrix &a) {
  const std::size_t n = a.rows();
  std::vector<Inequality> h;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = -1;
    h.push_back({e, 0});
  }
  for (std::size_t i = 0; i < a.cols(); ++i) h.push_back({to_rationals(a.column(i)), 1});
  return PolyhedronRep::from_inequalities(n, std::move(h));
}

/// H-rep of Q(A) = {x >= 0 : xA >= 1}.
inline PolyhedronRep covering_polyhedron(const IntMatrix &a) {
  const std::size_t n = a.rows();
  std::vector<Inequality> h;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = -1;
    h.push_back({e, 0});
  }
  for (std::size_t i = 0; i < a.cols(); ++i) {
    RatVector c = to_rationals(a.column(i));
    for (auto &x : c) x = -x;
    h.push_back({c, -1});
  }
  return PolyhedronRep::from_inequalities(n, std::move(h));
}

inline constexpr std::size_t kDefaultDownSetCap = 200000;

/// All alpha in N^n with alpha <= v for some column v, lexicographically
/// sorted. Throws ResourceError("down-set-cap") beyond cap vectors.
inline std::vector<IntVector> down_set(const IntMatrix &a,
                                       std::size_t cap = kDefaultDownSetCap) {
  const std::size_t n = a.rows();
  std::unordered_set<IntVector, VectorHash> seen;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    IntVector v = a.column(c), w(n, Integer(0));
    for (;;) {
      if (seen.insert(w).second && seen.size() > cap)
        throw ResourceError("down-set exceeds " + std::to_string(cap) + " vectors",
                            "down-set-cap");
      std::size_t j = 0;
      while (j < n && w[j] == v[j]) w[j++] = 0;
      if (j == n) break;
      ++w[j];
    }
  }
  std::vector<IntVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct MaximalVertexData {
  std::vector<RatVector> maximal_vertices;
  IntVector denominators;
  std::vector<Rational> norms;
};

/// The componentwise-maximal vertices of a bounded P with their d_i and |l_i|.
inline MaximalVertexData maximal_vertex_data(const PolyhedronRep &p0) {
  PolyhedronRep p = p0.has_v ? p0 : dd_convert(p0);
  if (!p.bounded()) throw DomainError("maximal_vertex_data: polyhedron is unbounded");
  if (p.empty) throw DomainError("maximal_vertex_data: polyhedron is empty");
  MaximalVertexData out;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < p.vertices.size() && maximal; ++j)
      if (j != i && leq(p.vertices[i], p.vertices[j])) maximal = false;
    if (!maximal) continue;
    const auto &l = p.vertices[i];
    Integer d = 1;
    for (const auto &x : l) d = lcm(d, denominator(x));
    out.maximal_vertices.push_back(l);
    out.denominators.push_back(d);
    out.norms.push_back(sum_of(l));
  }
  return out;
}

inline bool is_integral_polytope(const PolyhedronRep &p0) {
  PolyhedronRep p = p0.has_v ? p0 : dd_convert(p0);
  if (!p.bounded()) throw DomainError("is_integral_polytope: polyhedron is unbounded");
  for (const auto &v : p.vertices)
    for (const auto &x : v)
      if (!is_integral(x)) return false;
  return true;
}

/// Vertices of Q(A) that are not integral (the bounded part is conv(vertices)).
inline std::vector<RatVector> fractional_vertices(const PolyhedronRep &q) {
  std::vector<RatVector> out;
  for (const auto &v : q.vertices)
    if (std::any_of(v.begin(), v.end(), [](const Rational &x) { return !is_integral(x); }))
      out.push_back(v);
  return out;
}

/// T(P) with both sides: V from the down-set of the columns, H from the
/// maximal vertices of P. The two descriptions are checked to agree.
inline PolyhedronRep antiblocker_from_matrix(const IntMatrix &a,
                                             std::size_t cap = kDefaultDownSetCap) {
  require_valid_matrix(a);
  const std::size_t n = a.rows();
  auto ws = down_set(a, cap);
  std::vector<RatVector> pts;
  for (const auto &w : ws) pts.push_back(to_rationals(w));
  auto from_v = dd_convert(PolyhedronRep::from_points(n, std::move(pts)));

  auto mv = maximal_vertex_data(dd_convert(packing_polytope(a)));
  std::vector<Inequality> h;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = -1;
    h.push_back({e, 0});
  }
  for (const auto &l : mv.maximal_vertices) h.push_back(canonical_inequality(l, 1));
  auto from_h = dd_convert(PolyhedronRep::from_inequalities(n, std::move(h)));
  if (from_h.vertices != from_v.vertices)
    throw SoundnessError("antiblocker: conv(down-set) differs from {x >= 0 : <x,l_i> <= 1}");
  return from_v;
}

/// B(Q) = R_+^n + conv(columns), both sides.
inline PolyhedronRep blocker_from_matrix(const IntMatrix &a) {
  require_valid_matrix(a);
  const std::size_t n = a.rows();
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < a.cols(); ++i) pts.push_back(to_rationals(a.column(i)));
  std::vector<IntVector> rays;
  for (std::size_t j = 0; j < n; ++j) rays.push_back(unit_vector<Integer>(n, j));
  return dd_convert(PolyhedronRep::from_points(n, std::move(pts), std::move(rays)));
}

} // namespace monalg
