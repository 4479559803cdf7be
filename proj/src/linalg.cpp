#include "endotorsion/linalg.hpp"

#include <utility>

namespace endotorsion {

FMatrix to_field(const ZMatrix& m, const Field& field) {
  return map_entries<Integer, FieldElem>(m, field, [&](const Integer& x) { return field.from_integer(x); });
}

PMatrix to_poly(const FMatrix& m, const std::string& var) {
  return map_entries<FieldElem, Poly>(m, PolyRing{m.ring(), var},
                                      [&](const FieldElem& x) { return Poly::constant(x, var); });
}

ZMatrix to_integer(const FMatrix& m) {
  return map_entries<FieldElem, Integer>(m, IntegerRing{}, [](const FieldElem& x) {
    if (!x.field().is_rational() || x.rational().get_den() != 1) throw Error("matrix entry is not an integer");
    return Integer(x.rational().get_num());
  });
}

PMatrix char_matrix(const FMatrix& m, const std::string& var) {
  if (!m.is_square()) throw Error("characteristic matrix of a non-square matrix");
  PMatrix r = -to_poly(m, var);
  const Poly t = Poly::x(m.ring(), var);
  for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) += t;
  return r;
}

FMatrix eval_poly(const Poly& p, const FMatrix& m) {
  if (!m.is_square()) throw Error("polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  FMatrix acc(m.ring(), n, n);
  const FMatrix I = FMatrix::identity(m.ring(), n);
  for (int k = p.degree(); k >= 0; --k) acc = acc * m + p.coeff(static_cast<std::size_t>(k)) * I;
  return acc;
}

namespace {

Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Poly exact_quotient(const Poly& a, const Poly& b) { return exact_div(a, b); }

// Fraction-free elimination; every division is exact.
template <class R>
R bareiss(Matrix<R> a) {
  using T = RingTraits<R>;
  if (!a.is_square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return T::one(a.ring());
  bool negate = false;
  R prev = T::one(a.ring());
  for (std::size_t k = 0; k < n; ++k) {
    if (T::is_zero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && T::is_zero(a(p, k))) ++p;
      if (p == n) return T::zero(a.ring());
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = R(a(i, j) * a(k, k) - a(i, k) * a(k, j));
        a(i, j) = exact_quotient(num, prev);
      }
      a(i, k) = T::zero(a.ring());
    }
    prev = a(k, k);
  }
  R d = a(n - 1, n - 1);
  return negate ? R(-d) : d;
}

}  // namespace

Integer det(const ZMatrix& m) { return bareiss(m); }

Poly det(const PMatrix& m) { return bareiss(m); }

FieldElem det(const FMatrix& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  FMatrix a = m;
  const std::size_t n = a.rows();
  FieldElem d = m.ring().one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return m.ring().zero();
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    const FieldElem inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const FieldElem q = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= q * a(k, j);
    }
  }
  return d;
}

Poly charpoly(const FMatrix& m, const std::string& var) { return det(char_matrix(m, var)).with_var(var); }

Rref rref(const FMatrix& m) {
  FMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    const FieldElem inv = a(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const FieldElem q = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= q * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FMatrix& m) { return rref(m).pivots.size(); }

FMatrix kernel_basis(const FMatrix& m) {
  const Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  FMatrix k(m.ring(), n, n - r.pivots.size());
  std::size_t c = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k(f, c) = m.ring().one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], c) = -r.reduced(i, f);
    ++c;
  }
  return k;
}

FMatrix image_basis(const FMatrix& m) {
  const Rref r = rref(m);
  FMatrix out(m.ring(), m.rows(), r.pivots.size());
  for (std::size_t c = 0; c < r.pivots.size(); ++c) out.set_block(0, c, m.column(r.pivots[c]));
  return out;
}

std::optional<FMatrix> solve(const FMatrix& m, const FMatrix& b) {
  if (m.rows() != b.rows()) throw Error("solve: shape mismatch");
  const std::size_t n = m.cols();
  const Rref r = rref(hstack(m, b));
  if (!r.pivots.empty() && r.pivots.back() >= n) return std::nullopt;
  FMatrix x(m.ring(), n, b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(r.pivots[i], c) = r.reduced(i, n + c);
  return x;
}

FMatrix inverse(const FMatrix& m) {
  if (!m.is_square()) throw Error("inverse of a non-square matrix");
  if (rank(m) != m.rows()) throw Error("singular matrix");
  return *solve(m, FMatrix::identity(m.ring(), m.rows()));
}

Poly minpoly(const FMatrix& m, const std::string& var) {
  if (!m.is_square()) throw Error("minimal polynomial of a non-square matrix");
  const Field& F = m.ring();
  const std::size_t n = m.rows();
  Poly result = Poly::constant(F.one(), var);
  for (std::size_t j = 0; j < n; ++j) {
    // Krylov sequence e_j, M e_j, ... until M^k e_j depends on its predecessors.
    FMatrix v(F, n, 1);
    v(j, 0) = F.one();
    FMatrix krylov(F, n, 0);
    for (std::size_t k = 0;; ++k) {
      if (auto c = solve(krylov, v)) {
        std::vector<FieldElem> coeffs(k + 1, F.zero());
        for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*c)(i, 0);
        coeffs[k] = F.one();
        result = lcm(result, Poly(F, std::move(coeffs), var));
        break;
      }
      krylov = hstack(krylov, v);
      v = m * v;
    }
  }
  return result;
}

namespace {

bool euclid_less(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
bool euclid_less(const Poly& a, const Poly& b) { return a.degree() < b.degree(); }

std::pair<Integer, Integer> euclid_divmod(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {q, r};
}
std::pair<Poly, Poly> euclid_divmod(const Poly& a, const Poly& b) { return poly_divmod(a, b); }

// Unit u with u*x normalized, and its inverse.
std::pair<Integer, Integer> normalizing_unit(const Integer& x) {
  const Integer u = x < 0 ? -1 : 1;
  return {u, u};
}
std::pair<Poly, Poly> normalizing_unit(const Poly& x) {
  return {Poly::constant(x.lead().inverse(), x.var()), Poly::constant(x.lead(), x.var())};
}

bool is_normalized(const Integer& x) { return x > 0; }
bool is_normalized(const Poly& x) { return x.is_monic(); }

template <class R>
class SmithReducer {
  using T = RingTraits<R>;

 public:
  explicit SmithReducer(const Matrix<R>& m)
      : a_(m),
        U_(Matrix<R>::identity(m.ring(), m.rows())),
        Uinv_(U_),
        V_(Matrix<R>::identity(m.ring(), m.cols())),
        Vinv_(V_) {}

  SmithForm<R> run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    std::vector<R> d;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!choose_pivot(t)) break;
      reduce_at(t);
      auto [u, uinv] = normalizing_unit(a_(t, t));
      row_scale(t, u, uinv);
      d.push_back(a_(t, t));
    }
    return {std::move(d), std::move(U_), std::move(V_), std::move(Uinv_), std::move(Vinv_)};
  }

 private:
  // Least Euclidean size in the trailing block, lowest row-major index on ties.
  bool choose_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (T::is_zero(a_(i, j))) continue;
        if (!found || euclid_less(a_(i, j), a_(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    if (bi != t) row_swap(t, bi);
    if (bj != t) col_swap(t, bj);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < a_.rows() && !changed; ++i) {
        if (T::is_zero(a_(i, t))) continue;
        auto [q, r] = euclid_divmod(a_(i, t), a_(t, t));
        row_submul(i, t, q);
        if (!T::is_zero(r)) {
          row_swap(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < a_.cols() && !changed; ++j) {
        if (T::is_zero(a_(t, j))) continue;
        auto [q, r] = euclid_divmod(a_(t, j), a_(t, t));
        col_submul(j, t, q);
        if (!T::is_zero(r)) {
          col_swap(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      for (std::size_t i = t + 1; i < a_.rows() && !changed; ++i) {
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (!T::is_zero(euclid_divmod(a_(i, j), a_(t, t)).second)) {
            row_add(t, i);
            changed = true;
            break;
          }
        }
      }
      if (!changed) return;
    }
  }

  static void swap_rows(Matrix<R>& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(j, c));
  }
  static void swap_cols(Matrix<R>& x, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < x.rows(); ++r) std::swap(x(r, i), x(r, j));
  }

  void row_swap(std::size_t i, std::size_t j) {
    swap_rows(a_, i, j);
    swap_rows(U_, i, j);
    swap_cols(Uinv_, i, j);
  }

  void col_swap(std::size_t i, std::size_t j) {
    swap_cols(a_, i, j);
    swap_cols(V_, i, j);
    swap_rows(Vinv_, i, j);
  }

  // row_i -= q * row_t
  void row_submul(std::size_t i, std::size_t t, const R& q) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = R(a_(i, c) - q * a_(t, c));
    for (std::size_t c = 0; c < U_.cols(); ++c) U_(i, c) = R(U_(i, c) - q * U_(t, c));
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) Uinv_(r, t) = R(Uinv_(r, t) + q * Uinv_(r, i));
  }

  // col_j -= q * col_t
  void col_submul(std::size_t j, std::size_t t, const R& q) {
    for (std::size_t r = 0; r < a_.rows(); ++r) a_(r, j) = R(a_(r, j) - q * a_(r, t));
    for (std::size_t r = 0; r < V_.rows(); ++r) V_(r, j) = R(V_(r, j) - q * V_(r, t));
    for (std::size_t c = 0; c < Vinv_.cols(); ++c) Vinv_(t, c) = R(Vinv_(t, c) + q * Vinv_(j, c));
  }

  // row_t += row_i
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(t, c) = R(a_(t, c) + a_(i, c));
    for (std::size_t c = 0; c < U_.cols(); ++c) U_(t, c) = R(U_(t, c) + U_(i, c));
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) Uinv_(r, i) = R(Uinv_(r, i) - Uinv_(r, t));
  }

  void row_scale(std::size_t t, const R& u, const R& uinv) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(t, c) = R(u * a_(t, c));
    for (std::size_t c = 0; c < U_.cols(); ++c) U_(t, c) = R(u * U_(t, c));
    for (std::size_t r = 0; r < Uinv_.rows(); ++r) Uinv_(r, t) = R(Uinv_(r, t) * uinv);
  }

  Matrix<R> a_, U_, Uinv_, V_, Vinv_;
};

template <class R>
void verify_smith_impl(const Matrix<R>& m, const SmithForm<R>& s) {
  if (!(s.U * m * s.V == s.diagonal(m.rows(), m.cols())))
    throw IdentityViolation("Smith form does not reproduce the matrix");
  if (!(s.U * s.Uinv == Matrix<R>::identity(m.ring(), m.rows())) ||
      !(s.V * s.Vinv == Matrix<R>::identity(m.ring(), m.cols())))
    throw IdentityViolation("Smith transforms are not invertible");
  for (std::size_t i = 0; i < s.d.size(); ++i) {
    if (!is_normalized(s.d[i])) throw IdentityViolation("invariant factor is not normalized");
    if (i + 1 < s.d.size() && !RingTraits<R>::is_zero(euclid_divmod(s.d[i + 1], s.d[i]).second))
      throw IdentityViolation("invariant factors do not form a divisibility chain");
  }
}

template <class R>
std::optional<Matrix<R>> pid_solve_impl(const Matrix<R>& m, const Matrix<R>& b) {
  using T = RingTraits<R>;
  if (m.rows() != b.rows()) throw Error("solve: shape mismatch");
  const SmithForm<R> s = smith_normal_form(m);
  const Matrix<R> c = s.U * b;
  Matrix<R> y(m.ring(), m.cols(), b.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < b.cols(); ++k) {
      if (i >= s.rank()) {
        if (!T::is_zero(c(i, k))) return std::nullopt;
        continue;
      }
      auto [q, r] = euclid_divmod(c(i, k), s.d[i]);
      if (!T::is_zero(r)) return std::nullopt;
      y(i, k) = q;
    }
  }
  return s.V * y;
}

}  // namespace

SmithForm<Integer> smith_normal_form(const ZMatrix& m) { return SmithReducer<Integer>(m).run(); }
SmithForm<Poly> smith_normal_form(const PMatrix& m) { return SmithReducer<Poly>(m).run(); }

void verify_smith(const ZMatrix& m, const SmithForm<Integer>& s) { verify_smith_impl(m, s); }
void verify_smith(const PMatrix& m, const SmithForm<Poly>& s) { verify_smith_impl(m, s); }

std::optional<ZMatrix> pid_solve(const ZMatrix& m, const ZMatrix& b) { return pid_solve_impl(m, b); }
std::optional<PMatrix> pid_solve(const PMatrix& m, const PMatrix& b) { return pid_solve_impl(m, b); }

ZMatrix kernel_basis(const ZMatrix& m) {
  const auto s = smith_normal_form(m);
  return s.V.block(0, s.rank(), m.cols(), m.cols() - s.rank());
}

PMatrix kernel_basis(const PMatrix& m) {
  const auto s = smith_normal_form(m);
  return s.V.block(0, s.rank(), m.cols(), m.cols() - s.rank());
}

}  // namespace endotorsion
