#include "endotorsion/poly.hpp"

#include <algorithm>

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

// Negative rationals and single-term extension elements with a negative
// rational coefficient print with a leading minus sign.
bool prints_negative(const FieldElem& c) {
  const Field f = c.field();
  if (f.is_rational()) return c.sign() < 0;
  if (!f.is_extension() || !f.base().is_rational()) return false;
  const FieldElem* term = nullptr;
  for (const auto& x : c.ext_coeffs()) {
    if (x.is_zero()) continue;
    if (term) return false;
    term = &x;
  }
  return term && term->sign() < 0;
}

}  // namespace

Poly::Poly() : var_("t") {}

Poly::Poly(Field field, std::string var) : field_(field), var_(std::move(var)) {}

Poly::Poly(Field field, std::vector<FieldElem> coeffs, std::string var)
    : field_(field), c_(std::move(coeffs)), var_(std::move(var)) {
  for (const auto& c : c_) require_same_field(c.field(), field_);
  trim();
}

Poly Poly::constant(const FieldElem& c, std::string var) { return Poly(c.field(), {c}, std::move(var)); }

Poly Poly::monomial(const FieldElem& c, int degree, std::string var) {
  if (degree < 0) throw Error("negative monomial degree");
  std::vector<FieldElem> v(static_cast<std::size_t>(degree) + 1, c.field().zero());
  v.back() = c;
  return Poly(c.field(), std::move(v), std::move(var));
}

Poly Poly::x(const Field& field, std::string var) { return monomial(field.one(), 1, std::move(var)); }

Poly Poly::from_ints(const Field& field, const std::vector<long long>& coeffs, std::string var) {
  std::vector<FieldElem> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(field.from_int(c));
  return Poly(field, std::move(v), std::move(var));
}

Poly Poly::with_var(std::string var) const {
  Poly p = *this;
  p.var_ = std::move(var);
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }
bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

bool Poly::is_monomial() const {
  if (c_.empty()) return false;
  return std::all_of(c_.begin(), c_.end() - 1, [](const FieldElem& c) { return c.is_zero(); });
}

FieldElem Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

const FieldElem& Poly::lead() const {
  if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
  return c_.back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a.field_, b.field_);
  const auto& longer = a.c_.size() >= b.c_.size() ? a : b;
  const auto& shorter = a.c_.size() >= b.c_.size() ? b : a;
  std::vector<FieldElem> c = longer.c_;
  for (std::size_t i = 0; i < shorter.c_.size(); ++i) c[i] += shorter.c_[i];
  return Poly(a.field_, std::move(c), a.var_);
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_, a.var_);
  std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.field_, std::move(c), a.var_);
}

Poly operator*(const FieldElem& s, const Poly& p) {
  if (s.is_zero()) return Poly(p.field_, p.var_);
  std::vector<FieldElem> c = p.c_;
  for (auto& x : c) x = s * x;
  return Poly(p.field_, std::move(c), p.var_);
}

bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return lead().inverse() * *this;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_, var_);
  std::vector<FieldElem> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_.from_int(static_cast<long long>(i)) * c_[i]);
  return Poly(field_, std::move(d), var_);
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(field_.one(), var_);
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<FieldElem> c;
  if (k > 0) {
    c.assign(static_cast<std::size_t>(k), field_.zero());
    c.insert(c.end(), c_.begin(), c_.end());
  } else {
    const std::size_t drop = static_cast<std::size_t>(-k);
    for (std::size_t i = 0; i < std::min(drop, c_.size()); ++i) {
      if (!c_[i].is_zero()) throw Error("shift: polynomial not divisible by t^" + std::to_string(drop));
    }
    if (drop < c_.size()) c.assign(c_.begin() + static_cast<std::ptrdiff_t>(drop), c_.end());
  }
  return Poly(field_, std::move(c), var_);
}

FieldElem Poly::eval(const FieldElem& x) const {
  FieldElem acc = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc(field_, var_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it, var_);
  return acc;
}

std::string Poly::format(bool ascending) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const std::size_t k = ascending ? j : c_.size() - 1 - j;
    const FieldElem& c = c_[k];
    if (c.is_zero()) continue;
    const bool negative = prints_negative(c);
    const FieldElem mag = negative ? -c : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += mag.coefficient_string();
      continue;
    }
    if (!mag.is_one()) out += mag.coefficient_string() + "*";
    out += var_;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string Poly::to_string() const { return format(false); }

std::string Poly::to_string_ascending() const { return format(true); }

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) throw Error("zero divisor");
  const Field& F = a.field();
  if (a.degree() < b.degree()) return {Poly(F, a.var()), a};
  std::vector<FieldElem> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<FieldElem> q(r.size() - db, F.zero());
  const FieldElem inv = b.lead().inverse();
  for (std::size_t k = q.size(); k-- > 0;) {
    const FieldElem c = r[k + db] * inv;
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly(F, std::move(q), a.var()), Poly(F, std::move(r), a.var())};
}

Poly operator/(const Poly& a, const Poly& b) { return poly_divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) throw Error("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return q;
}

bool divides(const Poly& b, const Poly& a) { return (a % b).is_zero(); }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field(), a.var());
  return (exact_div(a, gcd(a, b)) * b).monic();
}

Xgcd xgcd(const Poly& a, const Poly& b) {
  const Field& F = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F.one(), a.var()), s1(F, a.var());
  Poly u0(F, a.var()), u1 = Poly::constant(F.one(), a.var());
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  const FieldElem inv = r0.lead().inverse();
  return {inv * r0, inv * s0, inv * u0};
}

Poly reversal(const Poly& p, int n) {
  if (n < p.degree()) throw Error("reversal length below degree");
  std::vector<FieldElem> c(static_cast<std::size_t>(n) + 1, p.field().zero());
  for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(n - i)] = p.coeffs()[static_cast<std::size_t>(i)];
  return Poly(p.field(), std::move(c), p.var());
}

Poly renormalize(const Poly& p) {
  if (p.is_zero()) throw Error("renormalize: zero polynomial");
  return reversal(p, p.degree());
}

int compare(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int k = a.degree(); k >= 0; --k) {
    const int c = compare(a.coeffs()[static_cast<std::size_t>(k)], b.coeffs()[static_cast<std::size_t>(k)]);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace endotorsion
