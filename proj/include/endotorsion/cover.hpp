#pragma once

// Cellular self-maps of a fiber, their algebraic mapping tori and infinite
// cyclic covers, and the torsion and deck-transformation zeta function.

#include <string>
#include <vector>

#include "endotorsion/chain.hpp"

namespace endotorsion {

/// Cellular chains C of a fiber over Z with a chain map theta (the monodromy).
/// A reduced model has its basepoint cell removed.
class CellularSelfMap {
 public:
  CellularSelfMap() = default;
  /// theta[k] acts on degree lo + k. Checks that theta is a chain map.
  CellularSelfMap(ZChain complex, std::vector<ZMatrix> theta, std::string label = "", bool reduced = false);

  const ZChain& complex() const { return complex_; }
  const ZChainMap& theta() const { return theta_; }
  ZMatrix theta(int i) const { return theta_.g(i); }
  const std::string& label() const { return label_; }
  bool reduced() const { return reduced_; }

  /// The fiber over Q with theta as endomorphism.
  ChainEndo rational() const;
  /// theta_* invertible on H_*(C; Q) in every degree.
  bool is_rational_equivalence() const;
  /// Throws Error("cover not Q(t)-acyclic") unless is_rational_equivalence().
  void require_equivalence() const;

 private:
  ZChain complex_;
  ZChainMap theta_;
  std::string label_;
  bool reduced_ = false;
};

/// cone(1 - theta): degree i is C_i + C_{i-1}, d = [[d, 1 - theta], [0, -d]].
/// A reduced model first gets its basepoint back (Z in degree 0, theta = 1).
ZChain mapping_torus(const CellularSelfMap& s);

struct CoverData {
  ZChain torus;
  /// char_complex of (C (x) Q, theta): chains of the cover over Q[t].
  PChain cover;
  HomologyReport<Poly> cover_homology;
  /// "t acts through theta" with the matrices listed.
  std::string deck;
};

CoverData cover_complex(const CellularSelfMap& s);

/// prod_i det(tI - theta_i)^((-1)^i) over Q; equals the value on homology.
RatFunc reidemeister_torsion(const CellularSelfMap& s);

struct DeckZeta {
  /// prod_i det(I - t theta_* on H_i(C; Q))^((-1)^(i+1)).
  RatFunc closed;
  /// exp(sum_k L(theta^k) t^k / k) mod t^N; checked against `closed`.
  TruncSeries series;
  /// L(theta^k) for k = 1 .. N - 1.
  std::vector<FieldElem> lefschetz;
};

DeckZeta deck_zeta(const CellularSelfMap& s, std::size_t order);

/// zeta(1/t) tau(t) = t^chi with chi the Euler characteristic of C; asserted.
MilnorReport milnor_check_cover(const CellularSelfMap& s);

/// "prototype", "reflection", "trefoil" or "closed". n >= 1 is the sphere
/// dimension and is ignored by the trefoil.
CellularSelfMap builtin_example(const std::string& name, int n = 2);

/// The monodromy matrices Q and R.
ZMatrix monodromy_q();
ZMatrix monodromy_r();

/// Least k in [1, max_k] with m^k = I, or 0.
int period(const ZMatrix& m, int max_k = 64);

/// Torus and cover homology, the Milnor report, the zeta series and the first
/// Lefschetz numbers.
std::string cover_report(const CellularSelfMap& s, std::size_t order);

/// End-to-end text report for a built-in example.
std::string gallery_report(const std::string& name, int n, std::size_t order);

}  // namespace endotorsion
