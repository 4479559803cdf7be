#pragma once

#include <string>

#include "endotorsion/poly.hpp"

namespace endotorsion {

/// Reduced fraction num/den with den monic and gcd(num, den) = 1. Any unit
/// content sits in the numerator, so equal rational functions are equal as
/// structures.
class RatFunc {
 public:
  /// Zero over Q.
  RatFunc();
  explicit RatFunc(Poly p);
  /// Throws Error("zero denominator") when den = 0.
  RatFunc(Poly num, Poly den);

  /// c * t^k for any integer k.
  static RatFunc monomial(const FieldElem& c, int k, std::string var = "t");
  static RatFunc t_power(const Field& field, int k, std::string var = "t");

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Field& field() const { return num_.field(); }
  const std::string& var() const { return num_.var(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  /// Throws Error("division by zero").
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc inverse() const;
  RatFunc pow(long long e) const;
  /// f(1/t), cleared to a reduced fraction.
  RatFunc at_inverse() const;

  std::string to_string() const;
  /// Scaled so the denominator has constant term 1 and printed constant term
  /// first, e.g. "(1 - t + t^2)/(1 - t)". The usual form for zeta functions.
  /// Falls back to to_string() when the denominator vanishes at 0.
  std::string to_string_at_zero() const;

 private:
  Poly num_;
  Poly den_;
};

/// p-adic valuation of f at the monic irreducible p. Throws for f = 0
/// ("valuation of zero"); irreducibility is the caller's contract here, see
/// ord_at in factor.hpp for the checked version.
int valuation(const RatFunc& f, const Poly& p);
/// Largest k with p^k | a, for a != 0.
int valuation(const Poly& a, const Poly& p);

}  // namespace endotorsion
