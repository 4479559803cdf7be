#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "endotorsion/field.hpp"
#include "endotorsion/linalg.hpp"
#include "endotorsion/parse.hpp"
#include "endotorsion/poly.hpp"
#include "endotorsion/ratfunc.hpp"

namespace testing_support {

using namespace endotorsion;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long between(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  bool coin() { return between(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  Poly poly(const Field& F, int max_degree, long long height, bool monic = false) {
    const int deg = static_cast<int>(between(0, max_degree));
    std::vector<FieldElem> c;
    for (int i = 0; i <= deg; ++i) c.push_back(F.from_int(between(-height, height)));
    if (monic) c[deg] = F.one();
    return Poly(F, std::move(c));
  }

  Poly nonzero_poly(const Field& F, int max_degree, long long height) {
    for (;;) {
      Poly p = poly(F, max_degree, height);
      if (!p.is_zero()) return p;
    }
  }

  RatFunc nonzero_ratfunc(const Field& F, int max_degree, long long height) {
    return RatFunc(nonzero_poly(F, max_degree, height), nonzero_poly(F, max_degree, height));
  }

  ZMatrix zmatrix(std::size_t r, std::size_t c, long long height) {
    ZMatrix m(IntegerRing{}, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Integer(static_cast<long>(between(-height, height)));
    return m;
  }

  FMatrix fmatrix(const Field& F, std::size_t r, std::size_t c, long long height) {
    FMatrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = F.from_int(between(-height, height));
    return m;
  }

  /// Sparse-ish integer matrix of the given rank (or less), built as a product.
  ZMatrix low_rank(std::size_t r, std::size_t c, std::size_t k, long long height) {
    return zmatrix(r, k, height) * zmatrix(k, c, height);
  }

  /// Unimodular integer matrix: a product of random elementary operations.
  ZMatrix unimodular(std::size_t n, int steps) {
    ZMatrix m = ZMatrix::identity(IntegerRing{}, n);
    if (n < 2) return m;
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(between(0, static_cast<long long>(n) - 1));
      auto j = static_cast<std::size_t>(between(0, static_cast<long long>(n) - 2));
      if (j >= i) ++j;
      const Integer q = Integer(static_cast<long>(between(-2, 2)));
      for (std::size_t c = 0; c < n; ++c) m(i, c) += q * m(j, c);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

inline Poly P(const std::string& s, const Field& F = Field::rationals()) { return parse_poly(s, F); }
inline RatFunc RF(const std::string& s, const Field& F = Field::rationals()) { return parse_ratfunc(s, F); }

inline FMatrix qmat(const std::vector<std::vector<long long>>& rows, const Field& F = Field::rationals()) {
  std::vector<std::vector<FieldElem>> e;
  for (const auto& r : rows) {
    e.emplace_back();
    for (auto v : r) e.back().push_back(F.from_int(v));
  }
  return FMatrix::from_rows(F, e);
}

inline ZMatrix zmat(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Integer>> e;
  for (const auto& r : rows) {
    e.emplace_back();
    for (auto v : r) e.back().push_back(Integer(static_cast<long>(v)));
  }
  return ZMatrix::from_rows(IntegerRing{}, e);
}

/// Cofactor expansion along the first row.
template <class R>
R laplace_det(const Matrix<R>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return RingTraits<R>::one(m.ring());
  if (n == 1) return m(0, 0);
  R acc = RingTraits<R>::zero(m.ring());
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<R> minor(m.ring(), n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, cc++) = m(i, k);
      }
    }
    R term = R(m(0, j) * laplace_det(minor));
    acc = (j % 2 == 0) ? R(acc + term) : R(acc - term);
  }
  return acc;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

/// gcd of all k x k minors (the k-th determinantal divisor), nonnegative.
inline Integer determinantal_divisor(const ZMatrix& m, std::size_t k) {
  Integer g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      ZMatrix sub(IntegerRing{}, k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      const Integer d = laplace_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

/// All monic polynomials of the given degree over F_p.
inline std::vector<Poly> all_monic(const Field& Fp, int degree) {
  const auto p = Fp.characteristic();
  std::vector<Poly> out;
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(degree), 0);
  for (;;) {
    std::vector<FieldElem> c;
    for (auto d : digits) c.push_back(Fp.from_int(d));
    c.push_back(Fp.one());
    out.emplace_back(Fp, std::move(c));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

/// Irreducibility over F_p by trial division with every monic of degree <= n/2.
inline bool brute_irreducible_fp(const Poly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; d <= f.degree() / 2; ++d)
    for (const auto& g : all_monic(f.field(), d))
      if ((f % g).is_zero()) return false;
  return true;
}

}  // namespace testing_support
