#pragma once

// Truncated power series c_0 + c_1 t + ... + c_{N-1} t^{N-1} mod t^N.

#include <cstddef>
#include <string>
#include <vector>

#include "endotorsion/ratfunc.hpp"

namespace endotorsion {

class TruncSeries {
 public:
  TruncSeries(Field field, std::size_t order);
  /// Coefficients are padded with zeros or truncated to `order`.
  TruncSeries(Field field, std::size_t order, std::vector<FieldElem> coeffs);

  const Field& field() const { return field_; }
  std::size_t order() const { return c_.size(); }
  const FieldElem& coeff(std::size_t i) const { return c_.at(i); }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

  /// Multiplicative inverse; the constant term must be nonzero.
  TruncSeries inverse() const;

  /// "1 + t - t^3 + O(t^5)".
  std::string to_string(const std::string& var = "t") const;

 private:
  Field field_;
  std::vector<FieldElem> c_;
};

TruncSeries poly_to_series(const Poly& p, std::size_t order);

/// Expansion of f mod t^N. Throws Error("pole at zero: not in A[t]_T") when
/// the denominator vanishes at 0.
TruncSeries ratfunc_to_series(const RatFunc& f, std::size_t order);

/// exp(s) mod t^N via E' = s' E. Requires s(0) = 0 and characteristic 0.
TruncSeries series_exp(const TruncSeries& s);

}  // namespace endotorsion
