#pragma once

// Random S-torsion endomorphisms with their decomposition known in advance.

#include <algorithm>
#include <map>

#include "endotorsion/endo.hpp"
#include "support.hpp"

namespace testing_support {

/// Monic irreducibles over Q used to build examples.
inline const std::vector<Poly>& irreducible_pool() {
  static const std::vector<Poly> pool = {P("t"),         P("t - 1"),     P("t + 1"),     P("t - 2"),    P("t^2 + 1"),
                                         P("t^2 - t + 1"), P("t^2 + t + 1"), P("t^2 - 2"), P("t^3 - 2")};
  return pool;
}

/// Companion matrix of a monic polynomial: ones below the diagonal, -coefficients
/// in the last column.
inline FMatrix companion(const Poly& p) {
  const auto n = static_cast<std::size_t>(p.degree());
  FMatrix c(p.field(), n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = p.field().one();
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i);
  return c;
}

inline FMatrix random_invertible(Gen& g, const Field& F, std::size_t n) {
  for (;;) {
    FMatrix m = g.fmatrix(F, n, n, 3);
    if (!det(m).is_zero()) return m;
  }
}

/// k copies of companion(q) on the diagonal, identities on the block
/// superdiagonal: semisimple part plus a commuting nilpotent of index k.
inline FMatrix block_jordan(const Poly& q, std::size_t k) {
  const auto d = static_cast<std::size_t>(q.degree());
  const FMatrix c = companion(q);
  FMatrix m(q.field(), d * k, d * k);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(b * d + i, b * d + j) = c(i, j);
      if (b + 1 < k) m(b * d + i, (b + 1) * d + i) = q.field().one();
    }
  return m;
}

struct STorsionCase {
  Endo e{FMatrix(Field::rationals(), 0, 0)};
  MultSet S;
  std::map<Poly, int, PolyLess> multiplicity;  // charpoly = prod p^m
  int nilpotency = 0;                          // largest Jordan block length
};

/// Block-Jordan pieces over pool irreducibles, conjugated by a random
/// invertible matrix. S gets generators that are products of the pieces'
/// irreducibles, sometimes padded with a factor that does not occur.
inline STorsionCase random_s_torsion(Gen& g, std::size_t max_dim = 6) {
  const auto& pool = irreducible_pool();
  STorsionCase out;
  FMatrix f(Field::rationals(), 0, 0);
  std::vector<Poly> used;
  const auto target = static_cast<std::size_t>(g.between(1, static_cast<long long>(max_dim)));
  for (int attempts = 0; attempts < 20 && f.rows() < target; ++attempts) {
    const Poly& q = pool[static_cast<std::size_t>(g.between(0, static_cast<long long>(pool.size()) - 1))];
    const auto d = static_cast<std::size_t>(q.degree());
    if (f.rows() + d > target) continue;
    const auto k = static_cast<std::size_t>(g.between(1, static_cast<long long>((target - f.rows()) / d)));
    f = block_diag(f, block_jordan(q, k));
    out.multiplicity[q] += static_cast<int>(k);
    out.nilpotency = std::max(out.nilpotency, static_cast<int>(k));
    if (std::find(used.begin(), used.end(), q) == used.end()) used.push_back(q);
  }
  if (f.rows() == 0) {
    f = companion(P("t - 1"));
    out.multiplicity[P("t - 1")] = 1;
    out.nilpotency = 1;
    used.push_back(P("t - 1"));
  }
  std::vector<Poly> gens;
  for (const auto& q : used) {
    if (!gens.empty() && g.coin()) {
      gens.back() *= q;
    } else {
      gens.push_back(q);
    }
  }
  if (g.coin()) gens.push_back(pool[static_cast<std::size_t>(g.between(0, static_cast<long long>(pool.size()) - 1))]);
  const FMatrix a = random_invertible(g, Field::rationals(), f.rows());
  out.e = Endo(a * f * inverse(a));
  out.S = MultSet(gens);
  return out;
}

}  // namespace testing_support
