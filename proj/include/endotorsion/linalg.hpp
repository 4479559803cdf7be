#pragma once

// Dense exact matrices over Z, a field, or F[t], and the algorithms the rest
// of the library needs: determinants, characteristic and minimal polynomials,
// row reduction over fields and Smith normal form over Z and F[t].

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "endotorsion/errors.hpp"
#include "endotorsion/field.hpp"
#include "endotorsion/integer.hpp"
#include "endotorsion/poly.hpp"

namespace endotorsion {

struct IntegerRing {
  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

/// F[var].
struct PolyRing {
  Field field;
  std::string var = "t";
  friend bool operator==(const PolyRing& a, const PolyRing& b) { return a.field == b.field; }
};

template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
  using Context = IntegerRing;
  static Integer zero(const Context&) { return 0; }
  static Integer one(const Context&) { return 1; }
  static bool is_zero(const Integer& x) { return x == 0; }
  static std::string str(const Integer& x) { return x.get_str(); }
};

template <>
struct RingTraits<FieldElem> {
  using Context = Field;
  static FieldElem zero(const Context& f) { return f.zero(); }
  static FieldElem one(const Context& f) { return f.one(); }
  static bool is_zero(const FieldElem& x) { return x.is_zero(); }
  static std::string str(const FieldElem& x) { return x.to_string(); }
};

template <>
struct RingTraits<Poly> {
  using Context = PolyRing;
  static Poly zero(const Context& r) { return Poly(r.field, r.var); }
  static Poly one(const Context& r) { return Poly::constant(r.field.one(), r.var); }
  static bool is_zero(const Poly& x) { return x.is_zero(); }
  static std::string str(const Poly& x) { return x.to_string(); }
};

template <class R>
class Matrix {
 public:
  using Traits = RingTraits<R>;
  using Context = typename Traits::Context;

  Matrix() = default;
  Matrix(Context ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, Traits::zero(ring_)) {}
  Matrix(Context ring, std::size_t rows, std::size_t cols, std::vector<R> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw Error("matrix entry count does not match its shape");
  }

  static Matrix identity(const Context& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one(ring);
    return m;
  }

  static Matrix from_rows(const Context& ring, const std::vector<std::vector<R>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    std::vector<R> e;
    e.reserve(rows.size() * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Error("ragged matrix rows");
      e.insert(e.end(), row.begin(), row.end());
    }
    return Matrix(ring, rows.size(), c, std::move(e));
  }

  const Context& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<R>& entries() const { return e_; }

  R& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!Traits::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
    Matrix b(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_shape(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = R(r.e_[k] + b.e_[k]);
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_shape(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = R(r.e_[k] - b.e_[k]);
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix shape mismatch in product");
    Matrix r(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& x = a(i, k);
        if (Traits::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (Traits::is_zero(b(k, j))) continue;
          r(i, j) = R(r(i, j) + x * b(k, j));
        }
      }
    }
    return r;
  }

  friend Matrix operator*(const R& c, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.e_) x = R(c * x);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  /// "[[0, -1], [1, 1]]".
  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += Traits::str((*this)(i, j));
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  void require_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix shape mismatch");
  }

  Context ring_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> e_;
};

using ZMatrix = Matrix<Integer>;
using FMatrix = Matrix<FieldElem>;
using PMatrix = Matrix<Poly>;

template <class R>
Matrix<R> hstack(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows()) throw Error("hstack: row counts differ");
  Matrix<R> r(a.ring(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

template <class R>
Matrix<R> vstack(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.cols() != b.cols()) throw Error("vstack: column counts differ");
  Matrix<R> r(a.ring(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

/// Block diagonal matrix diag(a, b).
template <class R>
Matrix<R> block_diag(const Matrix<R>& a, const Matrix<R>& b) {
  Matrix<R> r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

template <class R>
R trace(const Matrix<R>& m) {
  if (!m.is_square()) throw Error("trace of a non-square matrix");
  R s = RingTraits<R>::zero(m.ring());
  for (std::size_t i = 0; i < m.rows(); ++i) s = R(s + m(i, i));
  return s;
}

template <class R>
Matrix<R> matrix_pow(const Matrix<R>& m, unsigned k) {
  if (!m.is_square()) throw Error("power of a non-square matrix");
  Matrix<R> result = Matrix<R>::identity(m.ring(), m.rows());
  Matrix<R> base = m;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

template <class R, class S, class Fn>
Matrix<S> map_entries(const Matrix<R>& m, const typename RingTraits<S>::Context& ring, Fn fn) {
  std::vector<S> e;
  e.reserve(m.entries().size());
  for (const auto& x : m.entries()) e.push_back(fn(x));
  return Matrix<S>(ring, m.rows(), m.cols(), std::move(e));
}

FMatrix to_field(const ZMatrix& m, const Field& field);
/// Entries as constant polynomials.
PMatrix to_poly(const FMatrix& m, const std::string& var = "t");
/// Entries of an integer matrix; throws if some entry is not an integer.
ZMatrix to_integer(const FMatrix& m);
/// t*I - M over F[t].
PMatrix char_matrix(const FMatrix& m, const std::string& var = "t");
/// p(M), by Horner.
FMatrix eval_poly(const Poly& p, const FMatrix& m);

Integer det(const ZMatrix& m);
FieldElem det(const FMatrix& m);
Poly det(const PMatrix& m);

/// det(tI - M), monic of degree n.
Poly charpoly(const FMatrix& m, const std::string& var = "t");
/// Monic generator of the annihilator of M.
Poly minpoly(const FMatrix& m, const std::string& var = "t");

struct Rref {
  FMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Rref rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);
/// Columns form a basis of ker M, one per free column in increasing order.
FMatrix kernel_basis(const FMatrix& m);
/// Columns form a basis of the column space: the pivot columns of M.
FMatrix image_basis(const FMatrix& m);
/// Some x with M x = b (free variables zero), or nullopt when inconsistent.
std::optional<FMatrix> solve(const FMatrix& m, const FMatrix& b);
/// Throws Error("singular matrix").
FMatrix inverse(const FMatrix& m);

/// U * M * V = diag(d, 0...), with d the nonzero invariant factors (each
/// dividing the next; positive over Z, monic over F[t]). Uinv and Vinv are the
/// inverses of U and V.
template <class R>
struct SmithForm {
  std::vector<R> d;
  Matrix<R> U, V, Uinv, Vinv;

  std::size_t rank() const { return d.size(); }
  /// The diagonal matrix with the shape of M.
  Matrix<R> diagonal(std::size_t rows, std::size_t cols) const {
    Matrix<R> D(U.ring(), rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
    return D;
  }
};

SmithForm<Integer> smith_normal_form(const ZMatrix& m);
SmithForm<Poly> smith_normal_form(const PMatrix& m);

/// Throws IdentityViolation unless the form reproduces M, the transforms are
/// mutually inverse and the divisibility chain holds.
void verify_smith(const ZMatrix& m, const SmithForm<Integer>& s);
void verify_smith(const PMatrix& m, const SmithForm<Poly>& s);

/// Some x with M x = b over the PID, or nullopt.
std::optional<ZMatrix> pid_solve(const ZMatrix& m, const ZMatrix& b);
std::optional<PMatrix> pid_solve(const PMatrix& m, const PMatrix& b);

/// Columns spanning ker M over the PID (a basis of a direct summand).
ZMatrix kernel_basis(const ZMatrix& m);
PMatrix kernel_basis(const PMatrix& m);

}  // namespace endotorsion
