#include "endotorsion/ratfunc.hpp"

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

std::size_t term_count(const Poly& p) {
  std::size_t n = 0;
  for (const auto& c : p.coeffs()) n += c.is_zero() ? 0 : 1;
  return n;
}

std::string wrapped(const Poly& p, bool ascending = false) {
  const std::string s = ascending ? p.to_string_ascending() : p.to_string();
  return term_count(p) > 1 ? "(" + s + ")" : s;
}

}  // namespace

RatFunc::RatFunc() : num_(), den_(Poly::constant(Field::rationals().one())) {}

RatFunc::RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.field().one(), num_.var())) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_field(num_.field(), den_.field());
  if (den_.is_zero()) throw Error("zero denominator");
  den_ = den_.with_var(num_.var());
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field().one(), num_.var());
    return;
  }
  const Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  const FieldElem inv = den_.lead().inverse();
  num_ = inv * num_;
  den_ = inv * den_;
}

RatFunc RatFunc::monomial(const FieldElem& c, int k, std::string var) {
  const Poly one = Poly::constant(c.field().one(), var);
  if (k >= 0) return RatFunc(Poly::monomial(c, k, var), one);
  return RatFunc(Poly::constant(c, var), Poly::monomial(c.field().one(), -k, var));
}

RatFunc RatFunc::t_power(const Field& field, int k, std::string var) {
  return monomial(field.one(), k, std::move(var));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  // Cross-cancel first so intermediate products stay reduced.
  const Poly g1 = gcd(a.num_, b.den_);
  const Poly g2 = gcd(b.num_, a.den_);
  if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.field(), a.var()));
  return RatFunc(exact_div(a.num_, g1) * exact_div(b.num_, g2), exact_div(a.den_, g2) * exact_div(b.den_, g1));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error("division by zero");
  return a * b.inverse();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error("division by zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFunc RatFunc::at_inverse() const {
  if (is_zero()) return *this;
  const int dn = num_.degree();
  const int dd = den_.degree();
  return RatFunc(renormalize(num_).shifted(dd), renormalize(den_).shifted(dn));
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  if (num_.is_monomial() && den_.is_monomial()) {
    // c * t^(j - k) with j < k
    const int e = num_.degree() - den_.degree();
    const FieldElem& c = num_.lead();
    const std::string mono = var() + "^" + std::to_string(e);
    if (c.is_one()) return mono;
    if ((-c).is_one()) return "-" + mono;
    return c.coefficient_string() + "*" + mono;
  }
  return wrapped(num_) + "/" + wrapped(den_);
}

std::string RatFunc::to_string_at_zero() const {
  const FieldElem c = den_.coeff(0);
  if (c.is_zero()) return to_string();
  const FieldElem inv = c.inverse();
  const Poly num = inv * num_;
  const Poly den = inv * den_;
  if (den.is_one()) return num.to_string_ascending();
  return wrapped(num, true) + "/" + wrapped(den, true);
}

int valuation(const Poly& a, const Poly& p) {
  if (a.is_zero()) throw Error("valuation of zero");
  if (p.degree() < 1) throw Error("valuation at a constant");
  int k = 0;
  Poly x = a;
  for (;;) {
    auto [q, r] = poly_divmod(x, p);
    if (!r.is_zero()) return k;
    x = std::move(q);
    ++k;
  }
}

int valuation(const RatFunc& f, const Poly& p) {
  if (f.is_zero()) throw Error("valuation of zero");
  return valuation(f.num(), p) - valuation(f.den(), p);
}

}  // namespace endotorsion
