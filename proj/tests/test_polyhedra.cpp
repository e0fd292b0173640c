#include "monalg/polyhedra.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace monalg;

namespace {

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }
RatVector half(std::size_t n) { return RatVector(n, Rational(1, 2)); }

IntMatrix cycle(int n) {
  IntMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = 1;
    a((j + 1) % n, j) = 1;
  }
  return a;
}

RatVector ev(std::size_t n, std::initializer_list<int> ones) {
  RatVector v(n, Rational(0));
  for (int i : ones) v[i - 1] = 1;
  return v;
}

std::vector<RatVector> sorted(std::vector<RatVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

IntMatrix random_matrix(std::mt19937 &rng, int maxdim, int maxentry) {
  std::uniform_int_distribution<int> dim(1, maxdim), e(0, maxentry);
  for (;;) {
    std::size_t n = dim(rng), q = dim(rng);
    IntMatrix a(n, q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < q; ++j) a(i, j) = e(rng);
    try {
      require_valid_matrix(a);
      return a;
    } catch (const DomainError &) {
    }
  }
}

// P's H-rep as oracle rows
void packing_rows(const IntMatrix &a, std::vector<RatVector> &rows, RatVector &rhs) {
  for (std::size_t j = 0; j < a.rows(); ++j) {
    RatVector e(a.rows(), Rational(0));
    e[j] = -1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  for (std::size_t i = 0; i < a.cols(); ++i) {
    rows.push_back(to_rationals(a.column(i)));
    rhs.push_back(1);
  }
}

} // namespace

TEST(Cone, OrthantAndLineality) {
  auto c = cone_from_inequalities({{1, 0}, {0, 1}}, 2);
  EXPECT_EQ(c.rays, (std::vector<IntVector>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(c.lineality.empty());
  auto h = cone_from_inequalities({{1, 0, 0}}, 3);
  EXPECT_EQ(h.rays.size(), 1u);
  EXPECT_EQ(h.lineality.size(), 2u);
}

TEST(DdConvert, UnitSquare) {
  auto p = dd_convert(packing_polytope(IntMatrix::identity(2)));
  EXPECT_EQ(p.vertices, (std::vector<RatVector>{rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})}));
  EXPECT_TRUE(p.rays.empty());
  EXPECT_TRUE(is_integral_polytope(p));
}

TEST(DdConvert, PentagonPackingPolytope) {
  auto p = dd_convert(packing_polytope(cycle(5)));
  std::vector<RatVector> expect{RatVector(5, Rational(0)), half(5),
                                ev(5, {3, 5}), ev(5, {2, 5}), ev(5, {2, 4}),
                                ev(5, {1, 4}), ev(5, {1, 3})};
  for (int i = 1; i <= 5; ++i) expect.push_back(ev(5, {i}));
  EXPECT_EQ(p.vertices, sorted(expect));
  EXPECT_FALSE(is_integral_polytope(p));
}

TEST(DdConvert, TriangleCoveringPolyhedron) {
  auto q = dd_convert(covering_polyhedron(cycle(3)));
  EXPECT_EQ(q.vertices, sorted({half(3), ev(3, {1, 2}), ev(3, {1, 3}), ev(3, {2, 3})}));
  EXPECT_EQ(q.rays, (std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
}

TEST(DdConvert, EmptyIsAValue) {
  auto p = dd_convert(PolyhedronRep::from_inequalities(
      1, {{rv({1}), Rational(-1)}, {rv({-1}), Rational(0)}}));
  EXPECT_TRUE(p.empty);
  EXPECT_TRUE(p.vertices.empty());
}

TEST(DdConvert, InconsistentInputIsDomainError) {
  EXPECT_THROW(dd_convert(PolyhedronRep::from_inequalities(2, {{rv({1}), 1}})), DomainError);
  EXPECT_THROW(dd_convert(PolyhedronRep{}), DomainError);
}

TEST(DdConvert, LinesAreReported) {
  auto p = dd_convert(PolyhedronRep::from_inequalities(2, {{rv({1, 0}), 1}}));
  EXPECT_EQ(p.lines.size(), 1u);
  EXPECT_EQ(p.rays.size(), 1u);
}

TEST(DdConvert, AgreesWithSubsetOracleOnCycles) {
  for (int n = 3; n <= 7; ++n) {
    std::vector<RatVector> rows;
    RatVector rhs;
    packing_rows(cycle(n), rows, rhs);
    EXPECT_EQ(dd_convert(packing_polytope(cycle(n))).vertices,
              oracle::vertices_by_subsets(rows, rhs, n))
        << "C" << n;
  }
}

TEST(Antiblocker, IdentityTwo) {
  auto t = antiblocker_from_matrix(IntMatrix::identity(2));
  EXPECT_EQ(t.vertices, (std::vector<RatVector>{rv({0, 0}), rv({0, 1}), rv({1, 0})}));
  // x1 + x2 <= 1 is the only non-orthant facet
  int nontrivial = 0;
  for (const auto &h : t.inequalities)
    if (h.offset == 1) {
      EXPECT_EQ(h.normal, rv({1, 1}));
      ++nontrivial;
    }
  EXPECT_EQ(nontrivial, 1);
}

TEST(Antiblocker, OneByOne) {
  IntMatrix a(1, 1);
  a(0, 0) = 2;
  EXPECT_EQ(down_set(a), (std::vector<IntVector>{{0}, {1}, {2}}));
  auto t = antiblocker_from_matrix(a);
  EXPECT_EQ(t.vertices, (std::vector<RatVector>{rv({0}), rv({2})}));
}

TEST(Antiblocker, PentagonFacetsAreMaximalVertices) {
  auto t = antiblocker_from_matrix(cycle(5));
  auto mv = maximal_vertex_data(dd_convert(packing_polytope(cycle(5))));
  std::set<Inequality> expect;
  for (const auto &l : mv.maximal_vertices) expect.insert(canonical_inequality(l, 1));
  std::set<Inequality> got;
  for (const auto &h : t.inequalities)
    if (h.offset > 0) got.insert(h);
  EXPECT_EQ(got, expect);
  EXPECT_EQ(got.size(), 6u);
}

TEST(Antiblocker, DownSetCapIsResourceError) {
  IntMatrix a(3, 1);
  a(0, 0) = a(1, 0) = a(2, 0) = 9;
  try {
    down_set(a, 100);
    FAIL();
  } catch (const ResourceError &e) {
    EXPECT_EQ(e.cap(), "down-set-cap");
  }
}

TEST(Blocker, SingleColumn) {
  IntMatrix a(2, 1);
  a(0, 0) = a(1, 0) = 1;
  auto b = blocker_from_matrix(a);
  EXPECT_EQ(b.vertices, (std::vector<RatVector>{rv({1, 1})}));
  EXPECT_EQ(b.rays, (std::vector<IntVector>{{0, 1}, {1, 0}}));
}

TEST(Blocker, TriangleVerticesAreColumns) {
  auto b = blocker_from_matrix(cycle(3));
  EXPECT_EQ(b.vertices, sorted({ev(3, {1, 2}), ev(3, {2, 3}), ev(3, {1, 3})}));
  EXPECT_EQ(b.rays.size(), 3u);
}

TEST(Blocker, SquareMatchesGridMembership) {
  // oracle: z in B(Q) iff z >= 0 and <z, x> >= 1 at every vertex x of Q(A),
  // vertices taken from the subset enumeration of Q's inequalities
  IntMatrix a = cycle(4);
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t j = 0; j < 4; ++j) {
    RatVector e(4, Rational(0));
    e[j] = -1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    RatVector c = to_rationals(a.column(i));
    for (auto &x : c) x = -x;
    rows.push_back(c);
    rhs.push_back(-1);
  }
  auto qv = oracle::vertices_by_subsets(rows, rhs, 4);
  auto b = blocker_from_matrix(a);
  for (int m = 0; m < 9 * 9 * 9 * 9; ++m) {
    RatVector z(4);
    int t = m;
    for (int j = 0; j < 4; ++j) {
      z[j] = Rational(t % 9, 4);
      t /= 9;
    }
    bool in = true;
    for (const auto &x : qv) in = in && dot(z, x) >= 1;
    ASSERT_EQ(b.contains(z), in) << to_string(z);
  }
}

TEST(MaximalVertices, PentagonDenominators) {
  auto mv = maximal_vertex_data(dd_convert(packing_polytope(cycle(5))));
  ASSERT_EQ(mv.maximal_vertices.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto &l = mv.maximal_vertices[i];
    if (l == half(5)) EXPECT_EQ(mv.denominators[i], 2);
    else EXPECT_EQ(mv.denominators[i], 1);
    EXPECT_EQ(Rational(1) / Rational(mv.denominators[i]) + mv.norms[i], 3);
  }
}

TEST(MaximalVertices, SmallCases) {
  auto mv = maximal_vertex_data(dd_convert(packing_polytope(IntMatrix::identity(2))));
  ASSERT_EQ(mv.maximal_vertices.size(), 1u);
  EXPECT_EQ(mv.maximal_vertices[0], rv({1, 1}));
  EXPECT_EQ(mv.denominators[0], 1);
  IntMatrix a(1, 1);
  a(0, 0) = 2;
  mv = maximal_vertex_data(dd_convert(packing_polytope(a)));
  EXPECT_EQ(mv.maximal_vertices[0], rv({Rational(1, 2)}));
  EXPECT_EQ(mv.denominators[0], 2);
  EXPECT_THROW(maximal_vertex_data(dd_convert(covering_polyhedron(a))), DomainError);
}

TEST(Integral, SquareIncidenceIsIntegral) {
  EXPECT_TRUE(is_integral_polytope(dd_convert(packing_polytope(cycle(4)))));
}

TEST(PolyhedraProperty, RoundTripAndSubsetOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 5, 3);
    auto p = dd_convert(packing_polytope(a));
    auto back = dd_convert(PolyhedronRep::from_points(a.rows(), p.vertices));
    EXPECT_EQ(back.vertices, p.vertices);
    EXPECT_EQ(back.inequalities, p.inequalities);
    std::vector<RatVector> rows;
    RatVector rhs;
    packing_rows(a, rows, rhs);
    EXPECT_EQ(p.vertices, oracle::vertices_by_subsets(rows, rhs, a.rows()));
    // every vertex satisfies all inequalities
    for (const auto &v : p.vertices) EXPECT_TRUE(p.contains(v));
  }
}

TEST(PolyhedraProperty, AntiblockerOfAntiblockerIsP) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix a = random_matrix(rng, 4, 2);
    auto t = antiblocker_from_matrix(a);
    // {z >= 0 : <z, w> <= 1 for all w in the down-set} equals P
    std::vector<Inequality> h;
    for (std::size_t j = 0; j < a.rows(); ++j) {
      RatVector e(a.rows(), Rational(0));
      e[j] = -1;
      h.push_back({e, 0});
    }
    for (const auto &w : down_set(a))
      if (!is_zero(w)) h.push_back({to_rationals(w), 1});
    EXPECT_TRUE(same_polyhedron(PolyhedronRep::from_inequalities(a.rows(), h),
                                packing_polytope(a)));
  }
}

TEST(PolyhedraProperty, DownSetHullIsOrthantCutOfDownwardClosure) {
  // conv(w) = R_+^n ∩ (conv(w) + cone(-e_i)) on the lattice points of the box
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix a = random_matrix(rng, 4, 2);
    const std::size_t n = a.rows();
    auto t = antiblocker_from_matrix(a);
    std::vector<RatVector> pts;
    for (const auto &w : down_set(a)) pts.push_back(to_rationals(w));
    std::vector<IntVector> neg;
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, Integer(0));
      e[j] = -1;
      neg.push_back(e);
    }
    auto closure = dd_convert(PolyhedronRep::from_points(n, pts, neg));
    IntVector x(n, Integer(0));
    for (;;) {
      RatVector xr = to_rationals(x);
      bool in_orthant_cut = closure.contains(xr); // x >= 0 by construction
      ASSERT_EQ(t.contains(xr), in_orthant_cut);
      std::size_t j = 0;
      while (j < n && x[j] == 3) x[j++] = 0;
      if (j == n) break;
      ++x[j];
    }
  }
}
