#pragma once

// Low-degree K-theory: the divisor map on rational functions, the boundary of
// the endomorphism torsion, Steinberg symbols and their tame symbols.

#include <map>
#include <string>
#include <vector>

#include "endotorsion/endo.hpp"

namespace endotorsion {

/// Finite formal sum of monic irreducibles with nonzero integer coefficients.
class Divisor {
 public:
  Divisor() = default;

  /// Adds k * p; entries that cancel are removed.
  void add(const Poly& p, int k);
  int ord(const Poly& p) const;
  bool empty() const { return ords_.empty(); }
  const std::map<Poly, int, PolyLess>& support() const { return ords_; }

  friend Divisor operator+(const Divisor& a, const Divisor& b);
  friend Divisor operator-(const Divisor& a, const Divisor& b);
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.ords_ == b.ords_; }

  /// "ord_{t^2-t+1} = 2; ord_t = -3", highest degree first; "0" when empty.
  std::string to_string() const;

 private:
  std::map<Poly, int, PolyLess> ords_;
};

/// Orders of f at the irreducible factors of its numerator and denominator.
/// Throws for f = 0 and CapExceeded above the factorization cap.
Divisor divisor_of(const RatFunc& f, const FactorOptions& options = {});

struct SplitDivisor {
  Divisor s_part;   // irreducibles dividing a generator of S
  Divisor outside;  // the rest: units of the polynomial ring localized away
};

SplitDivisor divisor_of(const RatFunc& f, const MultSet& S, const FactorOptions& options = {});

struct BoundaryReport {
  Divisor from_torsion;        // divisor_of(torsion(e))
  Divisor from_decomposition;  // {p : multiplicity} over primary components
  bool holds = false;

  std::string to_string() const;
};

/// Requires e to be S-torsion (Error "not S-torsion"). Raises IdentityViolation
/// when the two divisors differ.
BoundaryReport boundary_report(const Endo& e, const MultSet& S, const FactorOptions& options = {});
bool boundary_tau_check(const Endo& e, const MultSet& S, const FactorOptions& options = {});

/// sign * {f, g}.
struct SymbolTerm {
  RatFunc f;
  RatFunc g;
  int sign = 1;
};

/// Formal sum of Steinberg symbols over one field. No Steinberg relations are
/// applied; only boundary values are computed from it.
class K2Symbol {
 public:
  K2Symbol() = default;
  /// Throws for a zero entry, a sign other than +-1 or a change of field.
  void add(RatFunc f, RatFunc g, int sign = 1);
  const std::vector<SymbolTerm>& terms() const { return terms_; }

  friend K2Symbol operator+(const K2Symbol& a, const K2Symbol& b);

  /// "{f, g} - {f', g'}"; "0" when empty.
  std::string to_string() const;

 private:
  std::vector<SymbolTerm> terms_;
};

/// Residue field F[t]/(pi): F itself when deg pi = 1, an extension otherwise.
Field residue_field(const Poly& pi);
/// Image of a polynomial in the residue field.
FieldElem residue(const Poly& a, const Poly& pi);

/// prod over terms of ((-1)^(ab) f^b / g^a mod pi)^sign with a = ord_pi f and
/// b = ord_pi g. pi must be monic irreducible; over an extension field only
/// degree 1 is accepted.
FieldElem tame_symbol(const K2Symbol& sym, const Poly& pi, const FactorOptions& options = {});

/// {u, t - theta} over E(t), E = Q[theta]/(p). u must be a nonzero element of E.
K2Symbol torsion_loop_symbol(const Poly& p, const FieldElem& u, const FactorOptions& options = {});

/// The tame symbol of torsion_loop_symbol(p, u) at t - theta must be u
/// (IdentityViolation otherwise); returns u != 1.
bool nontriviality_witness(const Poly& p, const FieldElem& u, const FactorOptions& options = {});

}  // namespace endotorsion
