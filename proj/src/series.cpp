#include "endotorsion/series.hpp"

#include "endotorsion/errors.hpp"

namespace endotorsion {

TruncSeries::TruncSeries(Field field, std::size_t order) : field_(field), c_(order, field.zero()) {}

TruncSeries::TruncSeries(Field field, std::size_t order, std::vector<FieldElem> coeffs)
    : field_(field), c_(std::move(coeffs)) {
  for (const auto& c : c_) require_same_field(c.field(), field_);
  c_.resize(order, field_.zero());
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field_, b.field_);
  if (a.order() != b.order()) throw Error("series order mismatch");
  TruncSeries r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field_, b.field_);
  if (a.order() != b.order()) throw Error("series order mismatch");
  TruncSeries r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same_field(a.field_, b.field_);
  if (a.order() != b.order()) throw Error("series order mismatch");
  const std::size_t n = a.order();
  TruncSeries r(a.field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

TruncSeries TruncSeries::inverse() const {
  if (c_.empty()) return *this;
  if (c_[0].is_zero()) throw Error("series with zero constant term is not invertible");
  const std::size_t n = c_.size();
  TruncSeries r(field_, n);
  const FieldElem inv0 = c_[0].inverse();
  r.c_[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    FieldElem acc = field_.zero();
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -(acc * inv0);
  }
  return r;
}

std::string TruncSeries::to_string(const std::string& var) const {
  std::string body = Poly(field_, c_, var).to_string();
  const std::string tail = "O(" + var + (c_.size() == 1 ? "" : "^" + std::to_string(c_.size())) + ")";
  if (body == "0") return tail;
  // Poly prints highest degree first; series read low to high.
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::string term = Poly::monomial(c_[k], static_cast<int>(k), var).to_string();
    if (first) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
    first = false;
  }
  return out + " + " + tail;
}

TruncSeries poly_to_series(const Poly& p, std::size_t order) {
  return TruncSeries(p.field(), order, p.coeffs());
}

TruncSeries ratfunc_to_series(const RatFunc& f, std::size_t order) {
  if (f.den().coeff(0).is_zero()) throw Error("pole at zero: not in A[t]_T");
  return poly_to_series(f.num(), order) * poly_to_series(f.den(), order).inverse();
}

TruncSeries series_exp(const TruncSeries& s) {
  if (s.field().characteristic() != 0) throw Error("exp undefined in positive characteristic");
  const std::size_t n = s.order();
  if (n > 0 && !s.coeff(0).is_zero()) throw Error("exp needs a series with zero constant term");
  const Field& F = s.field();
  // n E_n = sum_{k=1}^{n} k s_k E_{n-k}
  std::vector<FieldElem> e(n, F.zero());
  if (n > 0) e[0] = F.one();
  for (std::size_t m = 1; m < n; ++m) {
    FieldElem acc = F.zero();
    for (std::size_t k = 1; k <= m; ++k) {
      if (s.coeff(k).is_zero()) continue;
      acc += F.from_int(static_cast<long long>(k)) * s.coeff(k) * e[m - k];
    }
    e[m] = acc / F.from_int(static_cast<long long>(m));
  }
  return TruncSeries(F, n, std::move(e));
}

}  // namespace endotorsion
