#pragma once

// Dense univariate polynomials over an exact field.

#include <string>
#include <utility>
#include <vector>

#include "endotorsion/field.hpp"

namespace endotorsion {

class Poly {
 public:
  /// Zero over Q in the indeterminate t.
  Poly();
  explicit Poly(Field field, std::string var = "t");
  /// Coefficients low degree first; trailing zeros are trimmed.
  Poly(Field field, std::vector<FieldElem> coeffs, std::string var = "t");

  static Poly constant(const FieldElem& c, std::string var = "t");
  static Poly monomial(const FieldElem& c, int degree, std::string var = "t");
  /// The indeterminate itself.
  static Poly x(const Field& field, std::string var = "t");
  /// Integer coefficients, low degree first.
  static Poly from_ints(const Field& field, const std::vector<long long>& coeffs, std::string var = "t");

  const Field& field() const { return field_; }
  const std::string& var() const { return var_; }
  Poly with_var(std::string var) const;

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const;
  /// c * t^k with c != 0.
  bool is_monomial() const;

  const std::vector<FieldElem>& coeffs() const { return c_; }
  /// Coefficient of t^i, zero beyond the degree.
  FieldElem coeff(std::size_t i) const;
  /// Leading coefficient; throws on the zero polynomial.
  const FieldElem& lead() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const FieldElem& c, const Poly& p);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  /// Equality of coefficient lists; the display name is ignored.
  friend bool operator==(const Poly& a, const Poly& b);

  Poly monic() const;
  Poly derivative() const;
  Poly pow(unsigned e) const;
  /// Multiplication by t^k (k >= 0) or exact division by t^(-k).
  Poly shifted(int k) const;
  FieldElem eval(const FieldElem& x) const;
  /// p(q(t)).
  Poly compose(const Poly& q) const;

  std::string to_string() const;
  /// Constant term first: "1 - t + t^2".
  std::string to_string_ascending() const;

 private:
  void trim();
  std::string format(bool ascending) const;

  Field field_;
  std::vector<FieldElem> c_;
  std::string var_;
};

/// Euclidean division a = q*b + r with deg r < deg b. Throws Error("zero divisor").
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Quotient a/b; throws unless b divides a.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

struct Xgcd {
  Poly g, s, u;  // g = s*a + u*b, g monic (or zero)
};
Xgcd xgcd(const Poly& a, const Poly& b);

/// t^n p(1/t) for n = deg p: the coefficient reversal. Throws on zero.
Poly renormalize(const Poly& p);
/// t^n p(1/t) for an explicit n >= deg p.
Poly reversal(const Poly& p, int n);

/// Canonical order: by degree, then coefficients from the top down.
int compare(const Poly& a, const Poly& b);

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return compare(a, b) < 0; }
};

}  // namespace endotorsion
