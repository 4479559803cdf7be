#pragma once

// Factorization into monic irreducibles over Q (squarefree decomposition
// followed by Kronecker's interpolation search, degree-capped) and over F_p
// (distinct-degree plus Cantor-Zassenhaus splitting).

#include <string>
#include <utility>
#include <vector>

#include "endotorsion/ratfunc.hpp"

namespace endotorsion {

struct FactorOptions {
  /// Largest degree factored over Q.
  int cap = 8;
};

struct Factorization {
  FieldElem unit;
  /// (monic irreducible, multiplicity), in canonical Poly order.
  std::vector<std::pair<Poly, int>> factors;

  Poly expand() const;
  std::string to_string() const;
};

/// Throws CapExceeded("factorization cap exceeded") over Q above the cap, and
/// Error for extension fields or the zero polynomial. The result is checked by
/// re-multiplication before it is returned.
Factorization factor(const Poly& p, const FactorOptions& options = {});

/// Squarefree decomposition: p = lead * prod s_i^i with s_i monic, squarefree
/// and pairwise coprime. Returned pairs omit trivial parts.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

bool is_irreducible(const Poly& p, const FactorOptions& options = {});

/// Checks a claimed factorization of p: the product must reproduce p through
/// exact division and the factors must be monic, distinct and pairwise
/// coprime. Factors within the cap are additionally checked irreducible;
/// larger ones are accepted as claimed. Throws Error on failure.
void verify_factorization(const Poly& p, const Factorization& claimed, const FactorOptions& options = {});

/// Checked valuation: throws unless p is monic irreducible.
int ord_at(const RatFunc& f, const Poly& p, const FactorOptions& options = {});

/// Distinct monic irreducible factors of a nonzero polynomial.
std::vector<Poly> irreducible_factors(const Poly& p, const FactorOptions& options = {});

}  // namespace endotorsion
