#include <map>
#include <memory>
#include <mutex>

#include "endotorsion/errors.hpp"
#include "endotorsion/factor.hpp"
#include "endotorsion/poly.hpp"

namespace endotorsion {

namespace detail {

struct FieldData {
  Field::Kind kind = Field::Kind::rational;
  std::uint32_t p = 0;
  const FieldData* base = nullptr;
  std::unique_ptr<Poly> modulus;
  std::string symbol;
  std::string name;
  int degree = 1;
};

}  // namespace detail

namespace {

using detail::ExtRep;
using detail::FieldData;

const FieldData* rationals_data() {
  static const FieldData data{Field::Kind::rational, 0, nullptr, nullptr, "", "Q", 1};
  return &data;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<FieldData>>& registry() {
  static std::map<std::string, std::unique_ptr<FieldData>> r;
  return r;
}

bool is_small_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t mod_of(const Integer& v, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p));
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // a^(p-2)
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Poly ext_to_poly(const FieldData* f, const ExtRep& r) {
  return Poly(f->modulus->field(), r.coeffs, f->symbol);
}

ExtRep poly_to_ext(const Poly& p) { return ExtRep{p.coeffs()}; }

}  // namespace

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error("field mismatch: " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------- Field

Field::Field() : data_(rationals_data()) {}

Field Field::rationals() { return Field(rationals_data()); }

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_small_prime(p)) throw Error("F_p requires a prime p < 2^31, got " + std::to_string(p));
  const std::string key = "F" + std::to_string(p);
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[key];
  if (!slot) {
    slot = std::make_unique<FieldData>();
    slot->kind = Kind::prime;
    slot->p = p;
    slot->name = key;
  }
  return Field(slot.get());
}

Field Field::extension(const Poly& modulus, const std::string& symbol) {
  const Field base = modulus.field();
  if (base.is_extension()) throw Error("towers of extensions are not supported");
  if (modulus.degree() < 1) throw Error("extension modulus must have degree >= 1");
  if (!modulus.is_monic()) throw Error("extension modulus must be monic");
  if (symbol.empty()) throw Error("extension symbol must be nonempty");
  const Poly m = modulus.with_var(symbol);
  const std::string name = base.name() + "[" + symbol + "]/(" + m.to_string() + ")";
  {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(name);
    if (it != registry().end()) return Field(it->second.get());
  }
  if (!gcd(m, m.derivative()).is_one()) throw Error("extension modulus is not squarefree: " + m.to_string());
  const bool checkable = base.is_prime() || m.degree() <= FactorOptions{}.cap;
  if (checkable && !is_irreducible(m)) throw Error("extension modulus is reducible: " + m.to_string());

  auto data = std::make_unique<FieldData>();
  data->kind = Kind::extension;
  data->p = base.characteristic();
  data->base = base.data_;
  data->modulus = std::make_unique<Poly>(m);
  data->symbol = symbol;
  data->name = name;
  data->degree = m.degree();
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[name];
  if (!slot) slot = std::move(data);
  return Field(slot.get());
}

Field::Kind Field::kind() const { return data_->kind; }
std::uint32_t Field::characteristic() const { return data_->p; }
Field Field::base() const { return data_->base ? Field(data_->base) : *this; }
int Field::degree() const { return data_->degree; }

const Poly& Field::modulus() const {
  if (!data_->modulus) throw Error(name() + " is not an extension field");
  return *data_->modulus;
}

const std::string& Field::symbol() const {
  if (!is_extension()) throw Error(name() + " is not an extension field");
  return data_->symbol;
}

std::string Field::name() const { return data_->name; }

FieldElem Field::zero() const { return from_int(0); }
FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(long long v) const { return from_integer(Integer(static_cast<long>(v))); }

FieldElem Field::from_integer(const Integer& v) const {
  switch (data_->kind) {
    case Kind::rational:
      return FieldElem(data_, Rational(v));
    case Kind::prime:
      return FieldElem(data_, mod_of(v, data_->p));
    case Kind::extension: {
      FieldElem c = base().from_integer(v);
      ExtRep r;
      if (!c.is_zero()) r.coeffs.push_back(c);
      return FieldElem(data_, std::move(r));
    }
  }
  throw Error("unreachable");
}

FieldElem Field::from_rational(const Rational& q) const {
  if (is_rational()) return FieldElem(data_, q);
  FieldElem num = from_integer(q.get_num());
  FieldElem den = from_integer(q.get_den());
  if (den.is_zero()) throw Error("denominator " + q.get_den().get_str() + " vanishes in " + name());
  return num / den;
}

FieldElem Field::generator() const {
  if (!is_extension()) throw Error(name() + " has no generator");
  const Field b = base();
  return FieldElem::from_ext_coeffs(*this, {b.zero(), b.one()});
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem() : field_(rationals_data()), v_(Rational(0)) {}

bool FieldElem::is_zero() const {
  switch (field_->kind) {
    case Field::Kind::rational:
      return std::get<Rational>(v_) == 0;
    case Field::Kind::prime:
      return std::get<std::uint32_t>(v_) == 0;
    case Field::Kind::extension:
      return std::get<ExtRep>(v_).coeffs.empty();
  }
  return false;
}

bool FieldElem::is_one() const {
  switch (field_->kind) {
    case Field::Kind::rational:
      return std::get<Rational>(v_) == 1;
    case Field::Kind::prime:
      return std::get<std::uint32_t>(v_) == 1;
    case Field::Kind::extension: {
      const auto& c = std::get<ExtRep>(v_).coeffs;
      return c.size() == 1 && c[0].is_one();
    }
  }
  return false;
}

int FieldElem::sign() const {
  if (field_->kind == Field::Kind::rational) return sgn(std::get<Rational>(v_));
  return is_zero() ? 0 : 1;
}

const Rational& FieldElem::rational() const {
  if (field_->kind != Field::Kind::rational) throw Error("not a rational number");
  return std::get<Rational>(v_);
}

std::uint32_t FieldElem::residue() const {
  if (field_->kind != Field::Kind::prime) throw Error("not a prime-field element");
  return std::get<std::uint32_t>(v_);
}

const std::vector<FieldElem>& FieldElem::ext_coeffs() const {
  if (field_->kind != Field::Kind::extension) throw Error("not an extension element");
  return std::get<ExtRep>(v_).coeffs;
}

bool FieldElem::in_base() const { return field_->kind != Field::Kind::extension || ext_coeffs().size() <= 1; }

FieldElem FieldElem::from_ext_coeffs(const Field& ext, std::vector<FieldElem> coeffs) {
  if (!ext.is_extension()) throw Error(ext.name() + " is not an extension field");
  Poly p(ext.base(), std::move(coeffs), ext.symbol());
  if (p.degree() >= ext.degree()) p = p % ext.modulus();
  return FieldElem(ext.data_, poly_to_ext(p));
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field(), b.field());
  switch (a.field_->kind) {
    case Field::Kind::rational:
      return FieldElem(a.field_, Rational(std::get<Rational>(a.v_) + std::get<Rational>(b.v_)));
    case Field::Kind::prime: {
      const std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(a.v_)} + std::get<std::uint32_t>(b.v_);
      return FieldElem(a.field_, static_cast<std::uint32_t>(s % a.field_->p));
    }
    case Field::Kind::extension:
      return FieldElem(a.field_, poly_to_ext(ext_to_poly(a.field_, std::get<ExtRep>(a.v_)) +
                                             ext_to_poly(a.field_, std::get<ExtRep>(b.v_))));
  }
  throw Error("unreachable");
}

FieldElem FieldElem::operator-() const {
  switch (field_->kind) {
    case Field::Kind::rational:
      return FieldElem(field_, Rational(-std::get<Rational>(v_)));
    case Field::Kind::prime: {
      const std::uint32_t r = std::get<std::uint32_t>(v_);
      return FieldElem(field_, r == 0 ? 0u : field_->p - r);
    }
    case Field::Kind::extension:
      return FieldElem(field_, poly_to_ext(-ext_to_poly(field_, std::get<ExtRep>(v_))));
  }
  throw Error("unreachable");
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field(), b.field());
  switch (a.field_->kind) {
    case Field::Kind::rational:
      return FieldElem(a.field_, Rational(std::get<Rational>(a.v_) * std::get<Rational>(b.v_)));
    case Field::Kind::prime: {
      const std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(a.v_)} * std::get<std::uint32_t>(b.v_);
      return FieldElem(a.field_, static_cast<std::uint32_t>(s % a.field_->p));
    }
    case Field::Kind::extension: {
      Poly prod = ext_to_poly(a.field_, std::get<ExtRep>(a.v_)) * ext_to_poly(a.field_, std::get<ExtRep>(b.v_));
      return FieldElem(a.field_, poly_to_ext(prod % *a.field_->modulus));
    }
  }
  throw Error("unreachable");
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error("division by zero");
  switch (field_->kind) {
    case Field::Kind::rational:
      return FieldElem(field_, Rational(1 / std::get<Rational>(v_)));
    case Field::Kind::prime:
      return FieldElem(field_, inv_mod(std::get<std::uint32_t>(v_), field_->p));
    case Field::Kind::extension: {
      const Xgcd r = xgcd(ext_to_poly(field_, std::get<ExtRep>(v_)), *field_->modulus);
      if (!r.g.is_one()) throw Error("element is not invertible: modulus is reducible");
      return FieldElem(field_, poly_to_ext(r.s % *field_->modulus));
    }
  }
  throw Error("unreachable");
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field(), b.field());
  return a * b.inverse();
}

FieldElem FieldElem::pow(long long e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  FieldElem result = field().one();
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field_ != b.field_) return false;
  switch (a.field_->kind) {
    case Field::Kind::rational:
      return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    case Field::Kind::prime:
      return std::get<std::uint32_t>(a.v_) == std::get<std::uint32_t>(b.v_);
    case Field::Kind::extension:
      return std::get<ExtRep>(a.v_).coeffs == std::get<ExtRep>(b.v_).coeffs;
  }
  return false;
}

std::string FieldElem::to_string() const {
  if (field_->kind == Field::Kind::extension) {
    return ext_to_poly(field_, std::get<ExtRep>(v_)).to_string() + " (mod " + field_->modulus->to_string() + ")";
  }
  return coefficient_string();
}

std::string FieldElem::coefficient_string() const {
  switch (field_->kind) {
    case Field::Kind::rational:
      return endotorsion::to_string(std::get<Rational>(v_));
    case Field::Kind::prime:
      return std::to_string(std::get<std::uint32_t>(v_));
    case Field::Kind::extension: {
      const auto& c = std::get<ExtRep>(v_).coeffs;
      if (c.empty()) return "0";
      if (c.size() == 1) return c[0].coefficient_string();
      const Poly p = ext_to_poly(field_, std::get<ExtRep>(v_));
      return p.is_monomial() ? p.to_string() : "(" + p.to_string() + ")";
    }
  }
  return "";
}

int compare(const FieldElem& a, const FieldElem& b) {
  require_same_field(a.field(), b.field());
  switch (a.field().kind()) {
    case Field::Kind::rational:
      return cmp(a.rational(), b.rational()) < 0 ? -1 : (a.rational() == b.rational() ? 0 : 1);
    case Field::Kind::prime:
      return a.residue() < b.residue() ? -1 : (a.residue() == b.residue() ? 0 : 1);
    case Field::Kind::extension: {
      const Field base = a.field().base();
      return compare(Poly(base, a.ext_coeffs()), Poly(base, b.ext_coeffs()));
    }
  }
  return 0;
}

}  // namespace endotorsion
