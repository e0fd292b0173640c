#pragma once

// Smith normal form with unimodular certificates, quotient torsion, and
// coordinate systems for sublattices of Z^d.

#include "monalg/matrix.hpp"

#include <optional>

namespace monalg {

template <class T> struct BasicNormalForm {
  std::vector<T> diagonal; ///< min(rows, cols) entries, divisibility chain
  Matrix<T> left;          ///< U, unimodular, rows x rows
  Matrix<T> left_inverse;  ///< U^-1
  Matrix<T> right;         ///< V, unimodular, cols x cols
  std::size_t rank = 0;
};

/// U * M * V = diag(diagonal).
using LatticeNormalForm = BasicNormalForm<Integer>;

namespace detail {

template <class T> void add_row_multiple(Matrix<T> &m, std::size_t dst,
                                         std::size_t src, const T &f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
template <class T> void add_col_multiple(Matrix<T> &m, std::size_t dst,
                                         std::size_t src, const T &f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

} // namespace detail

/// Pivot is the smallest nonzero |entry| of the active block, ties broken by
/// the lexicographically least (row, col).
template <class T> BasicNormalForm<T> smith_normal_form_of(Matrix<T> a) {
  using detail::add_col_multiple;
  using detail::add_row_multiple;
  const std::size_t m = a.rows(), n = a.cols();
  BasicNormalForm<T> out;
  out.left = Matrix<T>::identity(m);
  out.left_inverse = Matrix<T>::identity(m);
  out.right = Matrix<T>::identity(n);
  auto &u = out.left;
  auto &uinv = out.left_inverse;
  auto &v = out.right;

  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      std::size_t pr = m, pc = n;
      T best = T(0);
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          T x = abs_value(a(i, j));
          if (pr == m || x < best) {
            best = x;
            pr = i;
            pc = j;
          }
        }
      if (pr == m) goto finished; // remaining block is zero
      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      uinv.swap_cols(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      const T p = a(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        T q = a(i, t) / p;
        if (q != 0) {
          add_row_multiple(a, i, t, T(-q));
          add_row_multiple(u, i, t, T(-q));
          add_col_multiple(uinv, t, i, q);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        T q = a(t, j) / p;
        if (q != 0) {
          add_col_multiple(a, j, t, T(-q));
          add_col_multiple(v, j, t, T(-q));
        }
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the rest of the block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row_multiple(a, t, bad, T(1));
      add_row_multiple(u, t, bad, T(1));
      add_col_multiple(uinv, bad, t, T(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
      for (std::size_t i = 0; i < m; ++i) uinv(i, t) = -uinv(i, t);
    }
  }
finished:
  out.rank = t;
  out.diagonal.assign(steps, T(0));
  for (std::size_t i = 0; i < t; ++i) out.diagonal[i] = a(i, i);
  return out;
}

/// Integer matrix SNF. Non-integral rational input is a domain error.
inline LatticeNormalForm smith_normal_form(const IntMatrix &m) {
  return smith_normal_form_of(m);
}
inline LatticeNormalForm smith_normal_form(const RatMatrix &m) {
  IntMatrix im(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j)))
        throw DomainError("smith_normal_form: non-integer entry at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      im(i, j) = numerator(m(i, j));
    }
  return smith_normal_form_of(im);
}

/// Invariant factors > 1 of Z^n / (column span of A); empty iff torsion-free.
inline IntVector torsion_of_quotient(const IntMatrix &a) {
  auto nf = smith_normal_form(a);
  IntVector out;
  for (const auto &d : nf.diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

/// A rank-r sublattice L of Z^d with basis b_1..b_r, and the coordinate map
/// Z^d ⊇ L -> Z^r. Built from the SNF of a generator matrix.
class Sublattice {
public:
  Sublattice() = default;

  /// Z-span of the given vectors (saturated=false) or R-span ∩ Z^d (true).
  static Sublattice spanned_by(const std::vector<IntVector> &gens,
                               std::size_t dim, bool saturated) {
    Sublattice s;
    s.dim_ = dim;
    if (gens.empty()) {
      s.u_ = IntMatrix::identity(dim);
      return s;
    }
    auto nf = smith_normal_form(IntMatrix::from_columns(gens, dim));
    s.rank_ = nf.rank;
    s.u_ = nf.left;
    s.scale_.assign(s.rank_, Integer(1));
    for (std::size_t i = 0; i < s.rank_; ++i) {
      if (!saturated) s.scale_[i] = nf.diagonal[i];
      IntVector b = nf.left_inverse.column(i);
      for (auto &x : b) x *= s.scale_[i];
      s.basis_.push_back(std::move(b));
    }
    return s;
  }

  static Sublattice full(std::size_t dim) {
    std::vector<IntVector> e;
    for (std::size_t i = 0; i < dim; ++i) e.push_back(unit_vector<Integer>(dim, i));
    return spanned_by(e, dim, true);
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  const std::vector<IntVector> &basis() const { return basis_; }
  /// index of L in its saturation
  Integer index_in_saturation() const {
    Integer p = 1;
    for (const auto &s : scale_) p *= s;
    return p;
  }

  /// Coordinates of x in the basis, or nullopt if x ∉ L.
  std::optional<IntVector> coordinates(const IntVector &x) const {
    IntVector y = u_ * x;
    for (std::size_t i = rank_; i < y.size(); ++i)
      if (y[i] != 0) return std::nullopt;
    IntVector c(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      if (y[i] % scale_[i] != 0) return std::nullopt;
      c[i] = y[i] / scale_[i];
    }
    return c;
  }
  /// Whether x lies in the real span of L.
  bool in_span(const IntVector &x) const {
    IntVector y = u_ * x;
    for (std::size_t i = rank_; i < y.size(); ++i)
      if (y[i] != 0) return false;
    return true;
  }

  IntVector embed(const IntVector &c) const {
    IntVector x(dim_, Integer(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) x[j] += c[i] * basis_[i][j];
    return x;
  }
  /// A functional on Z^d expressed in the coordinates of L.
  IntVector restrict_functional(const IntVector &f) const {
    IntVector g(rank_);
    for (std::size_t i = 0; i < rank_; ++i) g[i] = dot(f, basis_[i]);
    return g;
  }

private:
  std::size_t dim_ = 0, rank_ = 0;
  IntMatrix u_;
  IntVector scale_;
  std::vector<IntVector> basis_;
};

} // namespace monalg
