#pragma once

// Exact coefficient fields: the rationals, prime fields F_p (p < 2^31) and
// simple extensions K[x]/(m) of either.  Field descriptors are interned, so a
// Field is a cheap handle and two handles compare equal iff they describe the
// same field.

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "endotorsion/integer.hpp"

namespace endotorsion {

class Poly;
class FieldElem;

namespace detail {
struct FieldData;

struct ExtRep {
  std::vector<FieldElem> coeffs;  // over the base field, low degree first, trimmed
};
}  // namespace detail

class Field {
 public:
  enum class Kind { rational, prime, extension };

  /// The rationals.
  Field();

  static Field rationals();
  /// F_p. Throws if p is not a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// K[symbol]/(modulus) for a monic modulus over Q or F_p of degree >= 1.
  /// The modulus is checked to be squarefree, and irreducible whenever it can
  /// be factored (always over F_p, up to the default cap over Q).
  static Field extension(const Poly& modulus, const std::string& symbol = "theta");

  Kind kind() const;
  bool is_rational() const { return kind() == Kind::rational; }
  bool is_prime() const { return kind() == Kind::prime; }
  bool is_extension() const { return kind() == Kind::extension; }

  /// 0 for characteristic zero, p otherwise.
  std::uint32_t characteristic() const;
  /// Prime field underneath an extension; the field itself otherwise.
  Field base() const;
  /// Degree over the prime field.
  int degree() const;
  const Poly& modulus() const;
  const std::string& symbol() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long v) const;
  FieldElem from_integer(const Integer& v) const;
  /// Image of a rational number; throws for F_p when p divides the denominator.
  FieldElem from_rational(const Rational& q) const;
  /// Class of the extension symbol.
  FieldElem generator() const;

  /// "Q", "F7" or "Q[theta]/(theta^2 - theta + 1)".
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  friend class FieldElem;
  explicit Field(const detail::FieldData* data) : data_(data) {}
  const detail::FieldData* data_;
};

class FieldElem {
 public:
  /// Rational zero.
  FieldElem();

  Field field() const { return Field(field_); }

  bool is_zero() const;
  bool is_one() const;
  /// -1, 0 or 1 for rationals; 0 or 1 in the other fields.
  int sign() const;

  const Rational& rational() const;
  std::uint32_t residue() const;
  /// Coefficients over the base field for an extension element.
  const std::vector<FieldElem>& ext_coeffs() const;
  /// For an extension element: true if it lies in the base field.
  bool in_base() const;

  FieldElem inverse() const;
  FieldElem pow(long long e) const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  /// Throws Error("division by zero").
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
  FieldElem& operator/=(const FieldElem& b) { return *this = *this / b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  /// Standalone text; extension elements carry their "(mod ...)" suffix.
  std::string to_string() const;
  /// Text for use as a coefficient inside a larger expression.
  std::string coefficient_string() const;

  /// Extension element from base-field coefficients (reduced mod the modulus).
  static FieldElem from_ext_coeffs(const Field& ext, std::vector<FieldElem> coeffs);

 private:
  friend class Field;
  using Rep = std::variant<Rational, std::uint32_t, detail::ExtRep>;
  FieldElem(const detail::FieldData* f, Rep v) : field_(f), v_(std::move(v)) {}

  const detail::FieldData* field_;
  Rep v_;
};

/// Total order used for canonical output: numeric on Q and F_p residues,
/// coefficientwise (highest degree first) on extensions.
int compare(const FieldElem& a, const FieldElem& b);

/// Throws unless both operands live in the same field.
void require_same_field(const Field& a, const Field& b);

}  // namespace endotorsion
