#include "doctest.h"

#include "endotorsion/endo.hpp"
#include "endotorsion/errors.hpp"
#include "support.hpp"

using namespace endotorsion;
using namespace testing_support;

namespace {
const Field Q = Field::rationals();
const Endo EQ(qmat({{0, -1}, {1, 1}}));
const Endo Zero2(FMatrix(Q, 2, 2));
const Endo J2(qmat({{0, 1}, {0, 0}}));

MultSet S_of(std::vector<std::string> gens, const Field& F = Q) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(P(g, F));
  return MultSet(ps);
}

FMatrix random_invertible(Gen& g, const Field& F, std::size_t n) {
  for (;;) {
    FMatrix m = g.fmatrix(F, n, n, 3);
    if (!det(m).is_zero()) return m;
  }
}
}  // namespace

TEST_CASE("endomorphism torsion") {
  CHECK(torsion(EQ) == RF("t^2 - t + 1"));
  CHECK(torsion(Zero2) == RF("t^2"));
  CHECK(torsion(Endo(qmat({{2, 0}, {0, 3}}))) == RF("(t - 2)(t - 3)"));
  CHECK_THROWS(Endo(FMatrix(Q, 2, 3)));
}

TEST_CASE("zeta functions") {
  CHECK(zeta_det(EQ) == RF("1/(1 - t + t^2)"));
  CHECK(zeta_det(Zero2) == RF("1"));
  CHECK(zeta_det(Endo(qmat({{5}}))) == RF("1/(1 - 5t)"));

  const TruncSeries s = zeta_series(EQ, 5);
  CHECK(s == TruncSeries(Q, 5, {Q.from_int(1), Q.from_int(1), Q.from_int(0), Q.from_int(-1), Q.from_int(-1)}));
  CHECK(zeta_series(Zero2, 6) == poly_to_series(P("1"), 6));
  CHECK(zeta_series(Endo(qmat({{1}})), 4) == poly_to_series(P("1 + t + t^2 + t^3"), 4));
  CHECK_THROWS_WITH(zeta_series(Endo(qmat({{1}}, Field::prime(5))), 4), "exp undefined in positive characteristic");
}

TEST_CASE("Milnor identity for single endomorphisms") {
  const MilnorReport r = milnor_identity(EQ);
  CHECK(r.holds);
  CHECK(r.product == RF("t^2"));
  CHECK(r.expected == RF("t^2"));
  CHECK(r.zeta_at_inverse == RF("t^2/(t^2 - t + 1)"));
  CHECK(r.to_string() ==
        "tau = t^2 - t + 1\n"
        "zeta = 1/(t^2 - t + 1)\n"
        "zeta(t^-1) = t^2/(t^2 - t + 1)\n"
        "product = t^2\n"
        "expected = t^2 (chi = 2)\n"
        "MILNOR OK\n");
  CHECK(milnor_identity(Endo(FMatrix(Q, 4, 4))).product == RF("t^4"));
  CHECK(milnor_identity(Endo(FMatrix(Q, 0, 0))).product == RF("1"));

  MilnorReport bad = make_milnor_report(RF("t"), RF("1"), 2);
  CHECK_FALSE(bad.holds);
  CHECK_THROWS_AS(require_holds(bad), IdentityViolation);
}

TEST_CASE("Milnor identity on random endomorphisms") {
  Gen g(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(0, 6));
    const Endo e(g.fmatrix(Q, n, n, 10));
    const MilnorReport r = milnor_identity(e);
    REQUIRE(r.holds);
    CHECK(r.product * RatFunc::t_power(Q, -static_cast<int>(n)) == RF("1"));
    // Oracle: det(I - tf) is the coefficient reversal of det(tI - f).
    CHECK(one_minus_tf_det(e.f()) == reversal(charpoly(e.f()), static_cast<int>(n)));
  }
  for (const Field& F : {Field::prime(2), Field::prime(7)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto n = static_cast<std::size_t>(g.between(0, 5));
      CHECK(milnor_identity(Endo(g.fmatrix(F, n, n, 6))).holds);
    }
  }
}

TEST_CASE("trace exponential equals the determinant expansion") {
  Gen g(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(0, 4));
    const Endo e(g.fmatrix(Q, n, n, 4));
    const auto N = static_cast<std::size_t>(g.between(1, 16));
    CHECK(zeta_series(e, N) == ratfunc_to_series(zeta_det(e), N));
  }
}

TEST_CASE("torsion and zeta are multiplicative on block-triangular endomorphisms") {
  Gen g(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = static_cast<std::size_t>(g.between(1, 3));
    const auto b = static_cast<std::size_t>(g.between(1, 3));
    const FMatrix f1 = g.fmatrix(Q, a, a, 5);
    const FMatrix f2 = g.fmatrix(Q, b, b, 5);
    FMatrix f = block_diag(f1, f2);
    f.set_block(0, a, g.fmatrix(Q, a, b, 5));
    const Endo e(f), e1(f1), e2(f2);
    CHECK(torsion(e) == torsion(e1) * torsion(e2));
    CHECK(zeta_det(e) == zeta_det(e1) * zeta_det(e2));
  }
}

TEST_CASE("torsion is a conjugation invariant") {
  Gen g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 4));
    const FMatrix f = g.fmatrix(Q, n, n, 5);
    const FMatrix c = random_invertible(g, Q, n);
    CHECK(torsion(Endo(c * f * inverse(c))) == torsion(Endo(f)));
  }
}

TEST_CASE("S-torsion") {
  CHECK(is_s_torsion(EQ, S_of({"t", "t^2 - t + 1"})));
  CHECK_FALSE(is_s_torsion(EQ, S_of({"t"})));
  CHECK(is_s_torsion(J2, S_of({"t"})));
  CHECK(is_s_torsion(Endo(FMatrix(Q, 0, 0)), S_of({"t"})));
  // (t - 1)^2 annihilates a unipotent Jordan block; t^2 - 1 covers its factor.
  CHECK(is_s_torsion(Endo(qmat({{1, 1}, {0, 1}})), S_of({"t^2 - 1"})));
}

TEST_CASE("primary decomposition") {
  const auto q = primary_decompose(EQ);
  REQUIRE(q.size() == 1);
  CHECK(q[0].p == P("t^2 - t + 1"));
  CHECK(q[0].multiplicity == 1);
  CHECK(q[0].basis.cols() == 2);

  const auto d = primary_decompose(Endo(qmat({{0, 0}, {0, 1}})));
  REQUIRE(d.size() == 2);
  for (const auto& c : d) {
    CHECK(c.multiplicity == 1);
    if (c.p == P("t")) {
      CHECK(c.basis == qmat({{1}, {0}}));
    } else {
      CHECK(c.p == P("t - 1"));
      CHECK(c.basis == qmat({{0}, {1}}));
    }
  }

  const auto j = primary_decompose(J2);
  REQUIRE(j.size() == 1);
  CHECK(j[0].p == P("t"));
  CHECK(j[0].multiplicity == 2);
  CHECK(j[0].basis.cols() == 2);

  Gen g(10);
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 4));
    FMatrix f = g.fmatrix(Q, n, n, 2);
    if (g.coin()) f = block_diag(f, f);
    const Endo e(f);
    const auto comps = primary_decompose(e);
    std::size_t total = 0;
    for (const auto& c : comps) {
      total += c.basis.cols();
      CHECK(valuation(torsion(e), c.p) == c.multiplicity);
      CHECK(f * c.basis == c.basis * c.restricted);
    }
    CHECK(total == f.rows());
  }
}

TEST_CASE("zeta unit check") {
  CHECK(zeta_unit_check(EQ, S_of({"t", "t^2 - t + 1"})));
  CHECK(zeta_unit_check(J2, S_of({"t"})));
  CHECK_THROWS_WITH(zeta_unit_check(EQ, S_of({"t"})), "not S-torsion");
  Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(1, 4));
    const FMatrix f = g.fmatrix(Q, n, n, 3);
    const Endo e(f);
    std::vector<Poly> gens = irreducible_factors(charpoly(f));
    const MultSet S(gens);
    REQUIRE(is_s_torsion(e, S));
    CHECK(zeta_unit_check(e, S));
  }
}
