#pragma once

// Hilbert bases of pointed rational cones relative to a lattice, semigroup
// membership, and the integer decomposition property of lattice polytopes.
//
// hilbert_basis works in coordinates of L ∩ span(generators), where L is the
// requested lattice: lexicographic placing triangulation of the generators,
// lattice points of each half-open fundamental parallelepiped, then
// reduction in order of degree against the irreducibles found so far.

#include "monalg/polyhedra.hpp"
#include "monalg/snf.hpp"

#include <map>
#include <optional>
#include <unordered_map>

namespace monalg {

/// Generators of a cone plus the lattice it is taken in (empty = Z^d).
struct ConeSpec {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> generators;
  std::vector<IntVector> lattice;
};

inline ConeSpec make_cone(std::vector<IntVector> gens, std::vector<IntVector> lattice = {}) {
  if (gens.empty()) throw DomainError("cone has no generators");
  ConeSpec c;
  c.ambient_dim = gens.front().size();
  for (const auto &g : gens) {
    if (g.size() != c.ambient_dim) throw DomainError("generators of mixed dimension");
    if (is_zero(g)) throw DomainError("zero generator");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  c.generators = std::move(gens);
  c.lattice = std::move(lattice);
  return c;
}

struct HilbertCertificate {
  bool verdict = false;
  std::optional<IntVector> witness; ///< in cone and lattice, not in the semigroup
  std::vector<IntVector> basis;     ///< minimal Hilbert basis, lexicographic
};

/// The cone contains a line; witness spans it.
class NotPointedError : public DomainError {
public:
  explicit NotPointedError(IntVector w)
      : DomainError("cone is not pointed; lineality witness " + to_string(w)),
        witness_(std::move(w)) {}
  const IntVector &witness() const { return witness_; }

private:
  IntVector witness_;
};

struct HilbertOptions {
  std::size_t candidate_cap = 5'000'000; ///< parallelepiped points, all simplices
};

struct HilbertStats {
  std::size_t simplices = 0;
  std::size_t candidates = 0;
  Integer max_det = 0;
};

/// Coordinates on L ∩ span(generators), plus facets of the cone there.
class ConeCoordinates {
public:
  explicit ConeCoordinates(const ConeSpec &c) {
    const std::size_t d = c.ambient_dim;
    if (c.lattice.empty()) {
      outer_ = Sublattice::full(d);
    } else {
      for (const auto &b : c.lattice)
        if (b.size() != d) throw DomainError("lattice basis of wrong dimension");
      outer_ = Sublattice::spanned_by(c.lattice, d, false);
    }
    std::vector<IntVector> first;
    for (const auto &g : c.generators) {
      auto x = outer_.coordinates(g);
      if (!x) throw DomainError("generator " + to_string(g) + " is not in the lattice");
      first.push_back(*x);
    }
    inner_ = Sublattice::spanned_by(first, outer_.rank(), true);
    for (const auto &x : first) gens_.push_back(*inner_.coordinates(x));
    rank_ = inner_.rank();

    auto dual = dual_cone(gens_, rank_);
    facets_ = dual.rays;
    if (rank_of(facets_) < rank_) {
      auto k = integer_kernel(facets_, rank_);
      throw NotPointedError(embed(k.front()));
    }
    grading_.assign(rank_, Integer(0));
    for (const auto &f : facets_) grading_ = grading_ + f;
  }

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector> &generators() const { return gens_; }
  const std::vector<IntVector> &facets() const { return facets_; }
  const IntVector &grading() const { return grading_; }

  std::optional<IntVector> coordinates(const IntVector &x) const {
    auto a = outer_.coordinates(x);
    if (!a) return std::nullopt;
    return inner_.coordinates(*a);
  }
  IntVector embed(const IntVector &c) const { return outer_.embed(inner_.embed(c)); }

  bool in_cone(const IntVector &coords) const {
    for (const auto &f : facets_)
      if (dot(f, coords) < 0) return false;
    return true;
  }

private:
  Sublattice outer_, inner_;
  std::size_t rank_ = 0;
  std::vector<IntVector> gens_, facets_;
  IntVector grading_;
};

namespace detail {

template <class T> struct PlacedSimplex {
  std::vector<int> idx; ///< sorted generator indices
  T det;                ///< G * inv = det * I
  Matrix<T> inv;
};

template <class T>
Matrix<T> simplex_matrix(const std::vector<std::vector<T>> &gens, const std::vector<int> &idx) {
  const std::size_t r = idx.size();
  Matrix<T> g(r, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) g(i, j) = gens[idx[j]][i];
  return g;
}

struct FaceInfo {
  int count = 0;
  int simplex = -1;
  int opposite = -1; ///< position in the simplex of the vertex not on the face
};

/// Lexicographic placing triangulation of a full-dimensional cone.
template <class T>
std::vector<PlacedSimplex<T>> placing_triangulation(const std::vector<std::vector<T>> &gens,
                                                    std::size_t r) {
  std::vector<int> first;
  std::vector<std::vector<T>> chosen;
  std::vector<bool> used(gens.size(), false);
  for (std::size_t i = 0; i < gens.size() && first.size() < r; ++i) {
    chosen.push_back(gens[i]);
    if (rank_of(chosen) == chosen.size()) {
      first.push_back(int(i));
      used[i] = true;
    } else {
      chosen.pop_back();
    }
  }
  std::vector<PlacedSimplex<T>> simplices;
  std::map<std::vector<int>, FaceInfo> faces;

  auto add = [&](std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    auto inv = scaled_inverse(simplex_matrix(gens, idx));
    if (!inv) throw SoundnessError("placing triangulation produced a flat simplex");
    const int id = int(simplices.size());
    simplices.push_back({idx, inv->first, std::move(inv->second)});
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::vector<int> f;
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (j != k) f.push_back(idx[j]);
      auto &info = faces[f];
      ++info.count;
      info.simplex = id;
      info.opposite = int(k);
    }
  };
  add(first);

  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    if (used[gi]) continue;
    const auto &g = gens[gi];
    std::vector<std::vector<int>> fresh;
    for (const auto &[face, info] : faces) {
      if (info.count != 1) continue;
      const auto &s = simplices[info.simplex];
      T v = T(0);
      for (std::size_t j = 0; j < r; ++j) v += s.inv(info.opposite, j) * g[j];
      if (s.det < 0) v = -v;
      if (v < 0) {
        auto idx = face;
        idx.push_back(int(gi));
        fresh.push_back(std::move(idx));
      }
    }
    for (auto &idx : fresh) add(std::move(idx));
  }
  return simplices;
}

/// Nonzero lattice points of the half-open parallelepiped of a simplex.
template <class T, class F>
void parallelepiped_points(const std::vector<std::vector<T>> &gens, const PlacedSimplex<T> &s,
                           F &&emit) {
  const std::size_t r = s.idx.size();
  const T vol = abs_value(s.det);
  if (vol == 1) return;
  Matrix<T> g = simplex_matrix(gens, s.idx);
  auto nf = smith_normal_form_of(g);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < r; ++i)
    if (nf.diagonal[i] > 1) live.push_back(i);
  std::vector<T> k(live.size(), T(0));
  const T sign = s.det < 0 ? T(-1) : T(1);
  for (;;) {
    std::vector<T> u(r, T(0));
    for (std::size_t a = 0; a < live.size(); ++a)
      if (k[a] != 0)
        for (std::size_t i = 0; i < r; ++i) u[i] += k[a] * nf.left_inverse(i, live[a]);
    std::vector<T> lam = s.inv * u;
    bool nonzero = false;
    for (auto &x : lam) {
      x = sign * x;
      x = x % vol;
      if (x < 0) x += vol;
      if (x != 0) nonzero = true;
    }
    if (nonzero) {
      std::vector<T> p = g * lam;
      for (auto &x : p) x /= vol;
      emit(std::move(p));
    }
    std::size_t a = 0;
    while (a < live.size() && k[a] + 1 == nf.diagonal[live[a]]) k[a++] = T(0);
    if (a == live.size()) break;
    k[a] += 1;
  }
}

template <class T>
std::vector<IntVector> hilbert_core(const std::vector<IntVector> &gens_in,
                                    const std::vector<IntVector> &facets_in, std::size_t r,
                                    const HilbertOptions &opt, HilbertStats &stats) {
  auto gens = from_integers<T>(gens_in);
  auto facets = from_integers<T>(facets_in);
  auto simplices = placing_triangulation(gens, r);
  stats = {};
  stats.simplices = simplices.size();

  std::unordered_set<std::vector<T>, VectorHash> seen(gens.begin(), gens.end());
  std::vector<std::vector<T>> cand(gens.begin(), gens.end());
  for (const auto &s : simplices) {
    Integer vol = to_integer(abs_value(s.det));
    if (vol > stats.max_det) stats.max_det = vol;
    parallelepiped_points(gens, s, [&](std::vector<T> p) {
      if (!seen.insert(p).second) return;
      cand.push_back(std::move(p));
      if (cand.size() > opt.candidate_cap)
        throw ResourceError("Hilbert basis candidates exceed " +
                                std::to_string(opt.candidate_cap),
                            "hilbert-candidate-cap");
    });
  }
  stats.candidates = cand.size();

  struct Item {
    T deg;
    std::vector<T> val;
    std::size_t at;
  };
  std::vector<Item> items;
  items.reserve(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    Item it{T(0), std::vector<T>(facets.size()), i};
    for (std::size_t f = 0; f < facets.size(); ++f) {
      it.val[f] = dot(facets[f], cand[i]);
      it.deg += it.val[f];
    }
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [&](const Item &a, const Item &b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return cand[a.at] < cand[b.at];
  });
  std::vector<const Item *> irreducible;
  for (const auto &x : items) {
    bool reducible = false;
    for (const Item *h : irreducible) {
      if (h->deg >= x.deg) break;
      if (leq(h->val, x.val)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) irreducible.push_back(&x);
  }
  std::vector<IntVector> out;
  for (const Item *h : irreducible) out.push_back(to_integers(cand[h->at]));
  return out;
}

} // namespace detail

/// Minimal generating set of cone ∩ lattice, lexicographically sorted.
inline std::vector<IntVector> hilbert_basis(const ConeSpec &cone, const HilbertOptions &opt = {},
                                            HilbertStats *stats = nullptr) {
  ConeCoordinates cc(cone);
  HilbertStats st;
  auto coords = with_overflow_fallback([&]<class T>() {
    return detail::hilbert_core<T>(cc.generators(), cc.facets(), cc.rank(), opt, st);
  });
  std::vector<IntVector> out;
  for (const auto &c : coords) out.push_back(cc.embed(c));
  std::sort(out.begin(), out.end());
  if (stats) *stats = st;
  return out;
}

/// Whether the generators of `cone` form a Hilbert basis of cone ∩ lattice.
/// On failure the witness is an irreducible element of least degree that is
/// not a generator.
inline HilbertCertificate is_hilbert_basis(const ConeSpec &cone, const HilbertOptions &opt = {}) {
  ConeCoordinates cc(cone);
  HilbertStats st;
  auto coords = with_overflow_fallback([&]<class T>() {
    return detail::hilbert_core<T>(cc.generators(), cc.facets(), cc.rank(), opt, st);
  });
  HilbertCertificate cert;
  cert.verdict = true;
  std::set<IntVector> gens(cone.generators.begin(), cone.generators.end());
  for (const auto &c : coords) { // degree order
    IntVector x = cc.embed(c);
    if (!gens.count(x) && cert.verdict) {
      cert.verdict = false;
      cert.witness = x;
    }
    cert.basis.push_back(std::move(x));
  }
  std::sort(cert.basis.begin(), cert.basis.end());
  return cert;
}

inline HilbertCertificate is_hilbert_basis(const std::vector<IntVector> &vectors,
                                           const HilbertOptions &opt = {}) {
  return is_hilbert_basis(make_cone(vectors), opt);
}

// --- semigroup membership ---------------------------------------------------

struct MembershipOptions {
  std::size_t node_budget = 2'000'000;
};

/// A non-negative integer combination of `generators` equal to target, or
/// nullopt when none exists. Needs a functional positive on every generator;
/// the search is then finite and memoized on failed residues.
inline std::optional<IntVector> semigroup_membership(const IntVector &target,
                                                     const std::vector<IntVector> &generators,
                                                     const MembershipOptions &opt = {}) {
  const std::size_t d = target.size();
  const std::size_t m = generators.size();
  for (const auto &g : generators)
    if (g.size() != d) throw DomainError("semigroup_membership: dimension mismatch");
  if (is_zero(target)) return IntVector(m, Integer(0));

  std::vector<IntVector> nonzero_gens;
  std::vector<std::size_t> back;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_zero(generators[i])) {
      nonzero_gens.push_back(generators[i]);
      back.push_back(i);
    }
  if (nonzero_gens.empty()) return std::nullopt;

  auto dual = dual_cone(nonzero_gens, d);
  IntVector f(d, Integer(0));
  for (const auto &r : dual.rays) f = f + r;
  for (const auto &g : nonzero_gens)
    if (dot(f, g) <= 0)
      throw ResourceError("semigroup_membership: generators admit no positive grading, "
                          "search is unbounded",
                          "membership-grading");

  auto in_cone = [&](const IntVector &x) {
    for (const auto &l : dual.lineality)
      if (dot(l, x) != 0) return false;
    for (const auto &r : dual.rays)
      if (dot(r, x) < 0) return false;
    return true;
  };
  if (!in_cone(target)) return std::nullopt;

  std::unordered_set<IntVector, VectorHash> failed;
  std::size_t nodes = 0;
  IntVector coef(nonzero_gens.size(), Integer(0));
  std::function<bool(const IntVector &, std::size_t)> search = [&](const IntVector &rest,
                                                                   std::size_t from) -> bool {
    if (is_zero(rest)) return true;
    if (++nodes > opt.node_budget)
      throw ResourceError("semigroup_membership: node budget " +
                              std::to_string(opt.node_budget) + " exhausted",
                          "membership-node-budget");
    // residues are explored with non-decreasing generator index, so a failure
    // is only final for the same starting index
    IntVector key = rest;
    key.push_back(Integer(from));
    if (failed.count(key)) return false;
    for (std::size_t i = from; i < nonzero_gens.size(); ++i) {
      IntVector next = rest - nonzero_gens[i];
      if (!in_cone(next)) continue;
      ++coef[i];
      if (search(next, i)) return true;
      --coef[i];
    }
    failed.insert(std::move(key));
    return false;
  };
  if (!search(target, 0)) return std::nullopt;
  IntVector out(m, Integer(0));
  for (std::size_t i = 0; i < coef.size(); ++i) out[back[i]] = coef[i];
  return out;
}

// --- integer decomposition --------------------------------------------------

struct DecompositionResult {
  bool verdict = true;
  std::optional<std::pair<int, IntVector>> counterexample; ///< (k, point of kQ)
  std::size_t points_checked = 0;
};

/// Lattice points of a bounded polytope, lexicographically sorted.
inline std::vector<IntVector> lattice_points(const PolyhedronRep &p0, std::size_t cap = 1'000'000) {
  PolyhedronRep p = dd_convert(p0);
  if (p.empty) return {};
  if (!p.bounded()) throw DomainError("lattice_points: polyhedron is unbounded");
  const std::size_t n = p.ambient_dim;
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = ceil_of(p.vertices[0][j]);
    hi[j] = floor_of(p.vertices[0][j]);
    for (const auto &v : p.vertices) {
      lo[j] = std::min(lo[j], ceil_of(v[j]));
      hi[j] = std::max(hi[j], floor_of(v[j]));
    }
    if (lo[j] > hi[j]) return {};
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  std::size_t visited = 0;
  for (;;) {
    if (++visited > cap)
      throw ResourceError("lattice point box exceeds " + std::to_string(cap), "lattice-point-cap");
    if (p.contains(to_rationals(x))) out.push_back(x);
    std::size_t j = n;
    while (j > 0 && x[j - 1] == hi[j - 1]) {
      x[j - 1] = lo[j - 1];
      --j;
    }
    if (j == 0) break;
    ++x[j - 1];
  }
  return out;
}

inline PolyhedronRep dilate(const PolyhedronRep &p0, int k) {
  PolyhedronRep p = dd_convert(p0);
  for (auto &v : p.vertices)
    for (auto &x : v) x *= k;
  for (auto &h : p.inequalities) h.offset *= k;
  return p;
}

/// For k = 2..k_max, every lattice point of kQ is a sum of k lattice points of Q.
inline DecompositionResult integer_decomposition_check(const PolyhedronRep &q, int k_max,
                                                       std::size_t cap = 1'000'000) {
  DecompositionResult res;
  auto base = lattice_points(q, cap);
  if (base.empty()) return res;
  std::vector<IntVector> lifted;
  for (const auto &b : base) {
    IntVector g = b;
    g.push_back(1);
    lifted.push_back(std::move(g));
  }
  for (int k = 2; k <= k_max; ++k) {
    for (const auto &a : lattice_points(dilate(q, k), cap)) {
      ++res.points_checked;
      IntVector t = a;
      t.push_back(k);
      if (!semigroup_membership(t, lifted)) {
        res.verdict = false;
        res.counterexample = std::make_pair(k, a);
        return res;
      }
    }
  }
  return res;
}

} // namespace monalg
