#include "doctest.h"

#include "endotorsion/factor.hpp"
#include "support.hpp"

using namespace endotorsion;
using namespace testing_support;

namespace {
const Field Q = Field::rationals();
const FMatrix Qm = qmat({{0, -1}, {1, 1}});
const FMatrix Rm = qmat({{0, -1}, {1, 0}});
}  // namespace

TEST_CASE("determinants") {
  CHECK(det(Qm) == Q.one());
  CHECK(det(to_integer(Qm)) == 1);
  CHECK(det(FMatrix::identity(Q, 5)) == Q.one());
  CHECK(det(FMatrix(Q, 0, 0)) == Q.one());
  CHECK(det(char_matrix(Qm)) == P("t^2 - t + 1"));
  CHECK_THROWS(det(FMatrix(Q, 2, 3)));
}

TEST_CASE("Bareiss over Z agrees with elimination over Q and with cofactor expansion") {
  Gen g(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 8));
    const ZMatrix m = g.zmatrix(n, n, 10);
    const Integer d = det(m);
    CHECK(Q.from_integer(d) == det(to_field(m, Q)));
    if (n <= 6) CHECK(d == laplace_det(m));
  }
}

TEST_CASE("characteristic polynomials") {
  CHECK(charpoly(Qm) == P("t^2 - t + 1"));
  CHECK(charpoly(Rm) == P("t^2 + 1"));
  CHECK(charpoly(FMatrix(Q, 2, 2)) == P("t^2"));
  Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 6));
    const FMatrix m = g.fmatrix(Q, n, n, 10);
    const Poly c = charpoly(m);
    CHECK(c.degree() == static_cast<int>(n));
    CHECK(c.is_monic());
    CHECK(eval_poly(c, m).is_zero());
    CHECK(c == laplace_det(char_matrix(m)));
  }
  const Field F5 = Field::prime(5);
  for (int trial = 0; trial < 50; ++trial) {
    const FMatrix m = g.fmatrix(F5, 4, 4, 4);
    CHECK(eval_poly(charpoly(m), m).is_zero());
  }
}

TEST_CASE("minimal polynomials") {
  CHECK(minpoly(FMatrix::identity(Q, 3)) == P("t - 1"));
  CHECK(minpoly(Qm) == P("t^2 - t + 1"));
  CHECK(minpoly(qmat({{1, 0}, {0, 1}})) == P("t - 1"));
  CHECK(minpoly(qmat({{0, 1}, {0, 0}})) == P("t^2"));
  CHECK(minpoly(qmat({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}})) == P("(t - 2)(t - 3)"));
  Gen g(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 5));
    // Block structure makes nontrivial minimal polynomials common.
    FMatrix m = g.fmatrix(Q, n, n, 3);
    if (g.coin()) m = block_diag(m, m);
    const Poly mp = minpoly(m);
    CHECK(eval_poly(mp, m).is_zero());
    CHECK(divides(mp, charpoly(m)));
    // Minimality: no proper monic divisor of lower degree annihilates m.
    for (const auto& [q, e] : factor(mp).factors) CHECK_FALSE(eval_poly(exact_div(mp, q), m).is_zero());
  }
}

TEST_CASE("row reduction, kernels and solving") {
  CHECK(kernel_basis(FMatrix::identity(Q, 2) - Qm).cols() == 0);
  CHECK(kernel_basis(FMatrix(Q, 2, 2)) == FMatrix::identity(Q, 2));
  CHECK(kernel_basis(qmat({{1, 1}})) == qmat({{-1}, {1}}));

  CHECK(*solve(FMatrix::identity(Q, 2), qmat({{3}, {4}})) == qmat({{3}, {4}}));
  CHECK(*solve(qmat({{1, 1}}), qmat({{0}})) == qmat({{0}, {0}}));
  CHECK_FALSE(solve(qmat({{0}}), qmat({{1}})).has_value());
  CHECK_THROWS(solve(qmat({{1, 1}}), qmat({{0}, {1}})));

  CHECK(inverse(Qm) == qmat({{1, 1}, {-1, 0}}));
  CHECK_THROWS_WITH(inverse(qmat({{1, 2}, {2, 4}})), "singular matrix");

  Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(g.between(1, 5));
    const auto c = static_cast<std::size_t>(g.between(1, 5));
    const auto k = static_cast<std::size_t>(g.between(0, 4));
    const FMatrix m = to_field(g.low_rank(r, c, k, 3), Q);
    const FMatrix K = kernel_basis(m);
    CHECK((m * K).is_zero());
    CHECK(rank(m) + K.cols() == c);
    CHECK(rank(K) == K.cols());
    const FMatrix b = g.fmatrix(Q, r, 2, 5);
    if (auto x = solve(m, b)) {
      CHECK(m * *x == b);
    } else {
      CHECK(rank(hstack(m, b)) > rank(m));
    }
    const FMatrix x0 = g.fmatrix(Q, c, 1, 5);
    const auto x1 = solve(m, m * x0);
    REQUIRE(x1.has_value());
    CHECK(m * *x1 == m * x0);
  }
}

TEST_CASE("Smith normal form over Z: fixed cases") {
  const ZMatrix IR = zmat({{1, 1}, {-1, 1}});
  const auto s = smith_normal_form(IR);
  CHECK(s.d == std::vector<Integer>{1, 2});
  verify_smith(IR, s);
  CHECK(smith_normal_form(ZMatrix(IntegerRing{}, 3, 2)).d.empty());
  const ZMatrix IQ = zmat({{1, 1}, {-1, 0}});
  CHECK(smith_normal_form(IQ).d == std::vector<Integer>{1, 1});
  const ZMatrix m = zmat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const auto t = smith_normal_form(m);
  CHECK(t.d == std::vector<Integer>{2, 6, 12});
  verify_smith(m, t);
}

TEST_CASE("Smith normal form over Z matches determinantal divisors") {
  Gen g(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(g.between(0, 4));
    const auto c = static_cast<std::size_t>(g.between(0, 4));
    ZMatrix m = g.coin() ? g.zmatrix(r, c, 6) : g.low_rank(r, c, static_cast<std::size_t>(g.between(0, 3)), 4);
    const auto s = smith_normal_form(m);
    verify_smith(m, s);
    CHECK(det(s.U) * det(s.U) == 1);
    CHECK(det(s.V) * det(s.V) == 1);
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      const Integer dk = determinantal_divisor(m, k);
      if (k <= s.rank()) {
        CHECK(dk == prev * s.d[k - 1]);
        prev = dk;
      } else {
        CHECK(dk == 0);
      }
    }
  }
}

TEST_CASE("Smith normal form over F[t]") {
  const PMatrix tq = char_matrix(Qm);
  const auto s = smith_normal_form(tq);
  verify_smith(tq, s);
  REQUIRE(s.d.size() == 2);
  CHECK(s.d[0] == P("1"));
  CHECK(s.d[1] == P("t^2 - t + 1"));

  const auto z = smith_normal_form(char_matrix(FMatrix(Q, 2, 2)));
  CHECK(z.d[0] == P("t"));
  CHECK(z.d[1] == P("t"));

  Gen g(41);
  for (const Field& F : {Q, Field::prime(3)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto n = static_cast<std::size_t>(g.between(1, 4));
      const FMatrix m = g.fmatrix(F, n, n, 3);
      const PMatrix cm = char_matrix(m);
      const auto sf = smith_normal_form(cm);
      verify_smith(cm, sf);
      REQUIRE(sf.rank() == n);
      Poly prod = P("1", F);
      for (const auto& d : sf.d) prod *= d;
      CHECK(prod == charpoly(m));
      CHECK(sf.d.back() == minpoly(m));
    }
  }
}

TEST_CASE("solving over a PID") {
  const ZMatrix m = zmat({{2, 0}, {0, 3}});
  CHECK(*pid_solve(m, zmat({{4}, {9}})) == zmat({{2}, {3}}));
  CHECK_FALSE(pid_solve(m, zmat({{1}, {0}})).has_value());
  Gen g(55);
  for (int trial = 0; trial < 150; ++trial) {
    const auto r = static_cast<std::size_t>(g.between(1, 4));
    const auto c = static_cast<std::size_t>(g.between(1, 4));
    const ZMatrix a = g.zmatrix(r, c, 5);
    const ZMatrix x = g.zmatrix(c, 1, 5);
    const auto y = pid_solve(a, a * x);
    REQUIRE(y.has_value());
    CHECK(a * *y == a * x);
    const ZMatrix K = kernel_basis(a);
    CHECK((a * K).is_zero());
    CHECK(K.cols() + rank(to_field(a, Q)) == c);
  }
}

TEST_CASE("periodicity of the example monodromies") {
  CHECK(matrix_pow(to_integer(Qm), 6) == ZMatrix::identity(IntegerRing{}, 2));
  CHECK_FALSE(matrix_pow(to_integer(Qm), 3) == ZMatrix::identity(IntegerRing{}, 2));
  CHECK(matrix_pow(to_integer(Rm), 4) == ZMatrix::identity(IntegerRing{}, 2));
  CHECK_FALSE(matrix_pow(to_integer(Rm), 2) == ZMatrix::identity(IntegerRing{}, 2));
  CHECK(trace(matrix_pow(Qm, 2)) == Q.from_int(-1));
}
