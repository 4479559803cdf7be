#pragma once

// Endomorphisms (P, f) of finite free modules over a field: torsion
// det(tI - f), zeta 1/det(I - tf), Milnor's functional equation, S-torsion and
// the primary decomposition.

#include <string>
#include <vector>

#include "endotorsion/factor.hpp"
#include "endotorsion/linalg.hpp"
#include "endotorsion/multset.hpp"
#include "endotorsion/ratfunc.hpp"
#include "endotorsion/series.hpp"

namespace endotorsion {

class Endo {
 public:
  /// Throws unless f is square.
  explicit Endo(FMatrix f);

  std::size_t n() const { return f_.rows(); }
  const FMatrix& f() const { return f_; }
  const Field& field() const { return f_.ring(); }

 private:
  FMatrix f_;
};

/// zeta(1/t) * tau(t) against t^chi.
struct MilnorReport {
  RatFunc tau;
  RatFunc zeta;
  RatFunc zeta_at_inverse;
  RatFunc product;
  RatFunc expected;
  int chi = 0;
  bool holds = false;

  std::string to_string() const;
};

MilnorReport make_milnor_report(const RatFunc& tau, const RatFunc& zeta, int chi);
/// Throws IdentityViolation when the report does not hold.
void require_holds(const MilnorReport& report);

/// det(tI - f).
RatFunc torsion(const Endo& e);
/// 1/det(I - t f), with the determinant taken independently of torsion().
RatFunc zeta_det(const Endo& e);
/// exp(sum_{k=1}^{N-1} tr(f^k) t^k / k) mod t^N. Characteristic zero only.
TruncSeries zeta_series(const Endo& e, std::size_t order);
MilnorReport milnor_identity(const Endo& e);

/// True iff every irreducible factor of minpoly(f) divides a generator of S.
bool is_s_torsion(const Endo& e, const MultSet& S, const FactorOptions& options = {});

struct PrimaryComponent {
  Poly p;              // monic irreducible
  FMatrix basis;       // columns span ker p(f)^m
  int multiplicity;    // m, with dim = m * deg p
  FMatrix restricted;  // f on the component, in the basis above
};

/// One component per irreducible factor of charpoly(f), in canonical order.
/// Each component's restriction is checked to have charpoly p^m.
std::vector<PrimaryComponent> primary_decompose(const Endo& e, const FactorOptions& options = {});

/// det(I - t f) is a unit after inverting the dual set T of S. Requires e to be
/// S-torsion (Error "not S-torsion" otherwise); a false result raises
/// IdentityViolation.
bool zeta_unit_check(const Endo& e, const MultSet& S, const FactorOptions& options = {});

/// det(I - t f) as a polynomial.
Poly one_minus_tf_det(const FMatrix& f, const std::string& var = "t");

}  // namespace endotorsion
