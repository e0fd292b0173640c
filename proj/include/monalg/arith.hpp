#pragma once

// Exact scalars. Integer and Rational are arbitrary precision; CheckedInt is
// an int64 that throws IntegerOverflow instead of wrapping, used as the fast
// path of the templated kernels (see with_overflow_fallback).

#include "monalg/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace monalg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class CheckedInt {
public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {} // NOLINT implicit

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw IntegerOverflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw IntegerOverflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw IntegerOverflow{};
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (a.v_ == INT64_MIN && b.v_ == -1) throw IntegerOverflow{};
    return a.v_ / b.v_;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  CheckedInt operator-() const {
    if (v_ == INT64_MIN) throw IntegerOverflow{};
    return -v_;
  }
  CheckedInt &operator+=(CheckedInt o) { return *this = *this + o; }
  CheckedInt &operator-=(CheckedInt o) { return *this = *this - o; }
  CheckedInt &operator*=(CheckedInt o) { return *this = *this * o; }
  CheckedInt &operator/=(CheckedInt o) { return *this = *this / o; }

  friend constexpr auto operator<=>(CheckedInt, CheckedInt) = default;
  friend constexpr bool operator==(CheckedInt, CheckedInt) = default;

  friend std::ostream &operator<<(std::ostream &os, CheckedInt x) {
    return os << x.v_;
  }

private:
  std::int64_t v_ = 0;
};

inline CheckedInt abs(CheckedInt x) { return x < 0 ? -x : x; }
inline Integer abs_value(const Integer &x) { return boost::multiprecision::abs(x); }
inline CheckedInt abs_value(CheckedInt x) { return abs(x); }

inline CheckedInt gcd(CheckedInt a, CheckedInt b) {
  std::int64_t x = abs(a).value(), y = abs(b).value();
  while (y != 0) {
    std::int64_t t = x % y;
    x = y;
    y = t;
  }
  return x;
}
inline Integer gcd(const Integer &a, const Integer &b) {
  return boost::multiprecision::gcd(a, b);
}

template <class T> T lcm(const T &a, const T &b) {
  if (a == 0 || b == 0) return T(0);
  return abs_value(a / gcd(a, b) * b);
}

/// Narrowing conversions between the kernel integer types.
template <class T> T from_integer(const Integer &x);
template <> inline Integer from_integer<Integer>(const Integer &x) { return x; }
template <> inline CheckedInt from_integer<CheckedInt>(const Integer &x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw IntegerOverflow{};
  return CheckedInt(x.convert_to<std::int64_t>());
}
inline Integer to_integer(const Integer &x) { return x; }
inline Integer to_integer(CheckedInt x) { return Integer(x.value()); }

template <class T> std::vector<T> from_integers(const IntVector &v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto &x : v) out.push_back(from_integer<T>(x));
  return out;
}
template <class T> IntVector to_integers(const std::vector<T> &v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto &x : v) out.push_back(to_integer(x));
  return out;
}
template <class T>
std::vector<std::vector<T>> from_integers(const std::vector<IntVector> &rows) {
  std::vector<std::vector<T>> out;
  out.reserve(rows.size());
  for (const auto &r : rows) out.push_back(from_integers<T>(r));
  return out;
}
template <class T>
std::vector<IntVector> to_integers(const std::vector<std::vector<T>> &rows) {
  std::vector<IntVector> out;
  out.reserve(rows.size());
  for (const auto &r : rows) out.push_back(to_integers(r));
  return out;
}

/// Runs `body.template operator()<CheckedInt>()`; on overflow reruns with Integer.
template <class F> auto with_overflow_fallback(F &&body) {
  try {
    return body.template operator()<CheckedInt>();
  } catch (const IntegerOverflow &) {
    return body.template operator()<Integer>();
  }
}

// --- rational helpers -------------------------------------------------------

inline Integer numerator(const Rational &r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational &r) {
  return boost::multiprecision::denominator(r);
}
inline bool is_integral(const Rational &r) { return denominator(r) == 1; }

inline Integer floor_of(const Rational &r) {
  Integer n = numerator(r), d = denominator(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}
inline Integer ceil_of(const Rational &r) { return -floor_of(-r); }

/// floor(a / b) for b > 0
template <class T> T floor_div(const T &a, const T &b) {
  T q = a / b;
  if ((a % b != 0) && (a < 0)) q -= T(1);
  return q;
}
template <class T> T ceil_div(const T &a, const T &b) {
  return -floor_div(T(-a), b);
}

inline std::string to_string(const Integer &x) { return x.str(); }
inline std::string to_string(const Rational &x) {
  if (is_integral(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "p" or "p/q".
inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer q(s.substr(slash + 1));
  if (q == 0) throw DomainError("zero denominator in '" + s + "'");
  return Rational(Integer(s.substr(0, slash)), q);
}

// --- vectors ----------------------------------------------------------------

template <class T> T dot(const std::vector<T> &a, const std::vector<T> &b) {
  T s = T(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Rational dot(const RatVector &a, const IntVector &b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T> T content(const std::vector<T> &v) {
  T g = 0;
  for (const auto &x : v) {
    if (x != 0) g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

/// Divides by the gcd of the entries (sign preserved).
template <class T> void make_primitive(std::vector<T> &v) {
  T g = content(v);
  if (g > 1)
    for (auto &x : v) x /= g;
}

template <class T> bool is_zero(const std::vector<T> &v) {
  return std::all_of(v.begin(), v.end(), [](const T &x) { return x == 0; });
}

/// Smallest positive integer multiple of a rational vector that is integral,
/// divided by the gcd: the primitive integer vector on the same ray.
inline IntVector primitive_integer(const RatVector &v) {
  Integer l = 1;
  for (const auto &x : v) l = lcm(l, denominator(x));
  IntVector out;
  out.reserve(v.size());
  for (const auto &x : v) out.push_back(numerator(x * l));
  make_primitive(out);
  return out;
}

inline RatVector to_rationals(const IntVector &v) {
  return RatVector(v.begin(), v.end());
}

template <class T> std::vector<T> unit_vector(std::size_t n, std::size_t i) {
  std::vector<T> e(n, T(0));
  e[i] = T(1);
  return e;
}

template <class T>
std::vector<T> operator+(const std::vector<T> &a, const std::vector<T> &b) {
  std::vector<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
template <class T>
std::vector<T> operator-(const std::vector<T> &a, const std::vector<T> &b) {
  std::vector<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

/// Componentwise a <= b.
template <class T> bool leq(const std::vector<T> &a, const std::vector<T> &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] < a[i]) return false;
  return true;
}

template <class T> T sum_of(const std::vector<T> &v) {
  T s = T(0);
  for (const auto &x : v) s += x;
  return s;
}

template <class T>
std::string to_string(const std::vector<T> &v, const char *sep = ",") {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Integer>)
      s += to_string(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s + ")";
}

} // namespace monalg

template <> struct std::hash<monalg::CheckedInt> {
  std::size_t operator()(monalg::CheckedInt x) const noexcept {
    return std::hash<std::int64_t>{}(x.value());
  }
};

namespace monalg {
/// Hash for integer vectors used as set/map keys.
struct VectorHash {
  template <class T> std::size_t operator()(const std::vector<T> &v) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto &x : v) {
      std::size_t e;
      if constexpr (std::is_same_v<T, Integer>)
        e = boost::multiprecision::hash_value(x);
      else
        e = std::hash<T>{}(x);
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};
} // namespace monalg
