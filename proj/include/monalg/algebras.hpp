#pragma once

// Exponent-vector generators of the monomial algebras attached to a
// non-negative integer matrix A with columns v_1..v_q, and their normality.

#include "monalg/hilbert.hpp"

#include <string_view>

namespace monalg {

enum class AlgebraKind {
  rees,          ///< R[It]: e_i, (v_i,1)
  extended_rees, ///< R[It, 1/t]: e_i, (v_i,1), (0,-1)
  kf,            ///< K[F]: v_i
  kft,           ///< K[Ft]: (v_i,1)
  kft_t,         ///< K[Ft ∪ {t}]: (v_i,1), (0,1)
  S_downset,     ///< S: (w,1) over the down-set of the columns
  ehrhart        ///< A(P), P = conv(0, v_i): the cone over B, all its lattice points
};

inline constexpr std::string_view kind_name(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::rees: return "rees";
  case AlgebraKind::extended_rees: return "extended_rees";
  case AlgebraKind::kf: return "kf";
  case AlgebraKind::kft: return "kft";
  case AlgebraKind::kft_t: return "kft_t";
  case AlgebraKind::S_downset: return "S_downset";
  case AlgebraKind::ehrhart: return "ehrhart";
  }
  return "?";
}

inline AlgebraKind parse_kind(std::string_view s) {
  for (auto k : {AlgebraKind::rees, AlgebraKind::extended_rees, AlgebraKind::kf, AlgebraKind::kft,
                 AlgebraKind::kft_t, AlgebraKind::S_downset, AlgebraKind::ehrhart})
    if (kind_name(k) == s) return k;
  throw DomainError("unknown algebra kind '" + std::string(s) + "'");
}

struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::rees;
  IntMatrix source;
  std::size_t ambient_dim = 0;
  /// Semigroup generators; for ehrhart these only span the cone and the
  /// algebra is every lattice point of it.
  std::vector<IntVector> generators;
  /// Lattice basis the normality question is asked in; empty = Z^ambient.
  std::vector<IntVector> lattice;
};

namespace detail {
inline IntVector lifted(const IntVector &v, int last) {
  IntVector g = v;
  g.push_back(Integer(last));
  return g;
}
} // namespace detail

inline AlgebraSpec build_algebra(AlgebraKind kind, const IntMatrix &a,
                                 std::size_t down_set_cap = kDefaultDownSetCap) {
  require_valid_matrix(a);
  const std::size_t n = a.rows();
  AlgebraSpec s;
  s.kind = kind;
  s.source = a;
  auto cols = a.column_list();
  auto &g = s.generators;
  switch (kind) {
  case AlgebraKind::rees:
  case AlgebraKind::extended_rees:
    s.ambient_dim = n + 1;
    for (std::size_t i = 0; i < n; ++i) g.push_back(unit_vector<Integer>(n + 1, i));
    for (const auto &v : cols) g.push_back(detail::lifted(v, 1));
    if (kind == AlgebraKind::extended_rees) g.push_back(detail::lifted(IntVector(n, Integer(0)), -1));
    break;
  case AlgebraKind::kf:
    s.ambient_dim = n;
    g = cols;
    s.lattice = cols;
    break;
  case AlgebraKind::kft:
    s.ambient_dim = n + 1;
    for (const auto &v : cols) g.push_back(detail::lifted(v, 1));
    s.lattice = g;
    break;
  case AlgebraKind::kft_t:
    s.ambient_dim = n + 1;
    for (const auto &v : cols) g.push_back(detail::lifted(v, 1));
    g.push_back(detail::lifted(IntVector(n, Integer(0)), 1));
    s.lattice = g;
    break;
  case AlgebraKind::S_downset:
    s.ambient_dim = n + 1;
    for (const auto &w : down_set(a, down_set_cap)) g.push_back(detail::lifted(w, 1));
    break;
  case AlgebraKind::ehrhart:
    s.ambient_dim = n + 1;
    for (const auto &v : cols) g.push_back(detail::lifted(v, 1));
    g.push_back(detail::lifted(IntVector(n, Integer(0)), 1));
    break;
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return s;
}

/// NA = ZA ∩ R_+A in the algebra's lattice. The Ehrhart ring is normal by
/// definition and is answered without computation.
inline HilbertCertificate is_normal(const AlgebraSpec &s, const HilbertOptions &opt = {}) {
  if (s.kind == AlgebraKind::ehrhart) {
    HilbertCertificate c;
    c.verdict = true;
    return c;
  }
  return is_hilbert_basis(make_cone(s.generators, s.lattice), opt);
}

/// R[It, 1/t] is normal iff R[It] is; answered through the Rees algebra.
inline bool extended_rees_normal(const IntMatrix &a, const HilbertOptions &opt = {}) {
  return is_normal(build_algebra(AlgebraKind::rees, a), opt).verdict;
}

/// B = {(v_i,1),(0,1)} is a Hilbert basis of Z^{n+1}, i.e. K[Ft ∪ {t}] = A(P).
inline HilbertCertificate ehrhart_equality_certificate(const IntMatrix &a,
                                                       const HilbertOptions &opt = {}) {
  auto s = build_algebra(AlgebraKind::ehrhart, a);
  return is_hilbert_basis(make_cone(s.generators), opt);
}

inline bool ehrhart_equality(const IntMatrix &a, const HilbertOptions &opt = {}) {
  return ehrhart_equality_certificate(a, opt).verdict;
}

/// Gamma = {-e_i} ∪ {(1 - v_i, 1)} for a 0/1 matrix.
inline std::vector<IntVector> gamma_set(const IntMatrix &a) {
  const std::size_t n = a.rows();
  std::vector<IntVector> g;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n + 1, Integer(0));
    e[i] = -1;
    g.push_back(e);
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    IntVector v(n + 1, Integer(1));
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, j) != 0 && a(i, j) != 1) throw DomainError("gamma_set: matrix is not 0/1");
      v[i] = 1 - a(i, j);
    }
    g.push_back(v);
  }
  return g;
}

} // namespace monalg
