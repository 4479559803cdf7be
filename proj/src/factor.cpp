#include "endotorsion/factor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

// ---------------------------------------------------------------- helpers

using IntPoly = std::vector<Integer>;  // low degree first, trimmed

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer eval(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Primitive integer polynomial with positive leading coefficient, a rational
// multiple of p.
IntPoly primitive_part(const Poly& p) {
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
  }
  IntPoly out;
  for (const auto& c : p.coeffs()) {
    Rational scaled = c.rational() * den_lcm;
    out.push_back(scaled.get_num());
  }
  Integer g = content(out);
  if (out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

Poly to_poly(const IntPoly& p, const std::string& var) {
  const Field Q = Field::rationals();
  std::vector<FieldElem> c;
  for (const auto& x : p) c.push_back(Q.from_integer(x));
  return Poly(Q, std::move(c), var);
}

// Exact quotient a / b over Z, if it exists.
std::optional<IntPoly> int_divide(const IntPoly& a, const IntPoly& b) {
  if (degree(a) < degree(b)) return std::nullopt;
  IntPoly r = a;
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + db];
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Integer c = top / b.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * b[j];
  }
  for (std::size_t j = 0; j < db; ++j) {
    if (r[j] != 0) return std::nullopt;
  }
  trim(q);
  return q;
}

// ---------------------------------------------------------------- Kronecker

// Search for a factor of g (primitive, squarefree, no factors of degree < k)
// of degree exactly k, by interpolating through divisors of g at k+1 points.
std::optional<IntPoly> kronecker_factor(const IntPoly& g, int k) {
  const int n = degree(g);
  // Candidate evaluation points 0, 1, -1, 2, -2, ...
  struct Point {
    Integer a;
    Integer value;
  };
  std::vector<Point> points;
  const int pool = std::max(k + 6, 2 * n + 4);
  for (int i = 0; static_cast<int>(points.size()) < pool; ++i) {
    const long a = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
    Integer v = eval(g, Integer(a));
    if (v == 0) {
      if (k == 1) return IntPoly{Integer(-a), Integer(1)};
      continue;  // cannot happen once linear factors are gone
    }
    points.push_back({Integer(a), v});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& x, const Point& y) { return abs(x.value) < abs(y.value); });
  const std::size_t m = static_cast<std::size_t>(k) + 1;
  std::vector<std::vector<Integer>> choices(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& d : positive_divisors(points[i].value)) {
      choices[i].push_back(d);
      if (i > 0) choices[i].push_back(-d);  // h(a_0) > 0 fixes the sign of h
    }
  }
  // Lagrange basis through a_0..a_k, as rational coefficient vectors.
  std::vector<std::vector<Rational>> basis(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> num{1};
    Rational denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(num.size() + 1, 0);
      for (std::size_t s = 0; s < num.size(); ++s) {
        next[s + 1] += num[s];
        next[s] -= num[s] * points[j].a;
      }
      num = std::move(next);
      denom *= Rational(points[i].a - points[j].a);
    }
    for (std::size_t s = 0; s < m; ++s) basis[i][s] = num[s] / denom;
  }

  std::vector<std::size_t> idx(m, 0);
  std::vector<Rational> h(m);
  for (;;) {
    for (auto& c : h) c = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Integer& v = choices[i][idx[i]];
      for (std::size_t s = 0; s < m; ++s) h[s] += basis[i][s] * v;
    }
    bool ok = h.back() != 0;
    for (std::size_t s = 0; ok && s < m; ++s) ok = h[s].get_den() == 1;
    if (ok) {
      IntPoly cand;
      for (const auto& c : h) cand.push_back(c.get_num());
      ok = mpz_divisible_p(g.back().get_mpz_t(), cand.back().get_mpz_t()) != 0;
      if (ok && g[0] != 0 && cand[0] != 0) ok = mpz_divisible_p(g[0].get_mpz_t(), cand[0].get_mpz_t()) != 0;
      for (std::size_t extra = m; ok && extra < points.size(); ++extra) {
        const Integer hv = eval(cand, points[extra].a);
        ok = hv != 0 && mpz_divisible_p(points[extra].value.get_mpz_t(), hv.get_mpz_t()) != 0;
      }
      if (ok && int_divide(g, cand)) {
        if (cand.back() < 0) {
          for (auto& c : cand) c = -c;
        }
        return cand;
      }
    }
    // odometer
    std::size_t pos = 0;
    while (pos < m && ++idx[pos] == choices[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == m) return std::nullopt;
  }
}

std::vector<Poly> factor_squarefree_rational(const Poly& s) {
  IntPoly g = primitive_part(s);
  std::vector<Poly> out;
  for (int k = 1; 2 * k <= degree(g); ++k) {
    while (2 * k <= degree(g)) {
      auto h = kronecker_factor(g, k);
      if (!h) break;
      out.push_back(to_poly(*h, s.var()).monic());
      g = *int_divide(g, *h);
    }
  }
  if (degree(g) >= 1) out.push_back(to_poly(g, s.var()).monic());
  return out;
}

// ---------------------------------------------------------------- F_p

Poly powmod(const Poly& base, const Integer& e, const Poly& m) {
  Poly result = Poly::constant(base.field().one(), base.var()) % m;
  Poly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const Field& F = g.field();
  const std::uint32_t p = F.characteristic();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  for (;;) {
    std::vector<FieldElem> c;
    for (int i = 0; i < g.degree(); ++i) c.push_back(F.from_int(coeff(rng)));
    Poly a(F, std::move(c), g.var());
    if (a.degree() < 1) continue;
    Poly b;
    if (p == 2) {
      b = a % g;
      Poly sq = b;
      for (int i = 1; i < d; ++i) {
        sq = (sq * sq) % g;
        b += sq;
      }
    } else {
      Integer q;
      mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
      b = powmod(a, Integer((q - 1) / 2), g) - Poly::constant(F.one(), g.var());
    }
    Poly h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(exact_div(g, h), d, rng, out);
      return;
    }
  }
}

std::vector<Poly> factor_squarefree_prime(const Poly& s) {
  const Field& F = s.field();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<Poly> out;
  Poly f = s.monic();
  const Poly x = Poly::x(F, s.var());
  Poly h = x;
  const Integer p(static_cast<unsigned long>(F.characteristic()));
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, p, f);
    Poly g = gcd(h - x, f);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back(f.monic());
  return out;
}

// p-th root of a polynomial in t^p over F_p.
Poly pth_root(const Poly& c, std::uint32_t p) {
  std::vector<FieldElem> r;
  for (std::size_t i = 0; i < c.coeffs().size(); i += p) r.push_back(c.coeffs()[i]);
  return Poly(c.field(), std::move(r), c.var());
}

void sqf_into(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  const Field& F = f.field();
  Poly c = gcd(f, f.derivative());
  Poly w = exact_div(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = exact_div(w, y);
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0) {
    const std::uint32_t p = F.characteristic();
    if (p == 0) throw IdentityViolation("squarefree decomposition left a nonconstant cofactor");
    sqf_into(pth_root(c, p), mult * static_cast<int>(p), out);
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw Error("squarefree decomposition of zero");
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() >= 1) sqf_into(p.monic(), 1, out);
  return out;
}

Poly Factorization::expand() const {
  Poly r = Poly::constant(unit);
  for (const auto& [f, e] : factors) {
    r = (r * f.pow(static_cast<unsigned>(e))).with_var(f.var());
  }
  return r;
}

std::string Factorization::to_string() const {
  std::string out = unit.coefficient_string();
  for (const auto& [f, e] : factors) {
    out += " * (" + f.to_string() + ")";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

Factorization factor(const Poly& p, const FactorOptions& options) {
  if (p.is_zero()) throw Error("cannot factor the zero polynomial");
  const Field& F = p.field();
  if (F.is_extension()) throw Error("factorization over extension fields is not supported");
  if (F.is_rational() && p.degree() > options.cap) {
    throw CapExceeded("factorization cap exceeded: degree " + std::to_string(p.degree()) + " > " +
                      std::to_string(options.cap));
  }
  Factorization result{p.lead(), {}};
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    const std::vector<Poly> irreducibles =
        F.is_rational() ? factor_squarefree_rational(part) : factor_squarefree_prime(part);
    for (const auto& q : irreducibles) result.factors.emplace_back(q.with_var(p.var()), mult);
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  if (!(result.expand() == p)) throw IdentityViolation("factorization does not reproduce its input");
  return result;
}

bool is_irreducible(const Poly& p, const FactorOptions& options) {
  if (p.degree() < 1) return false;
  const Factorization f = factor(p, options);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

void verify_factorization(const Poly& p, const Factorization& claimed, const FactorOptions& options) {
  if (p.is_zero()) throw Error("cannot verify a factorization of zero");
  if (claimed.unit.is_zero()) throw Error("factorization unit is zero");
  Poly rest = claimed.unit.inverse() * p;
  for (std::size_t i = 0; i < claimed.factors.size(); ++i) {
    const auto& [f, e] = claimed.factors[i];
    if (!f.is_monic() || f.degree() < 1) throw Error("claimed factor is not monic of positive degree: " + f.to_string());
    if (e < 1) throw Error("claimed multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (!gcd(f, claimed.factors[j].first).is_one()) throw Error("claimed factors are not pairwise coprime");
    }
    for (int k = 0; k < e; ++k) {
      auto [q, r] = poly_divmod(rest, f);
      if (!r.is_zero()) throw Error("claimed factor does not divide: " + f.to_string());
      rest = std::move(q);
    }
    const bool checkable = f.field().is_prime() || f.degree() <= options.cap;
    if (checkable && !is_irreducible(f, options)) throw Error("claimed factor is reducible: " + f.to_string());
  }
  if (!rest.is_one()) throw Error("claimed factorization does not multiply back to the input");
}

int ord_at(const RatFunc& f, const Poly& p, const FactorOptions& options) {
  if (f.is_zero()) throw Error("valuation of zero");
  if (!p.is_monic() || !is_irreducible(p, options)) throw Error("ord_at needs a monic irreducible: " + p.to_string());
  return valuation(f, p);
}

std::vector<Poly> irreducible_factors(const Poly& p, const FactorOptions& options) {
  std::vector<Poly> out;
  for (const auto& [q, e] : factor(p, options).factors) out.push_back(q);
  return out;
}

}  // namespace endotorsion
