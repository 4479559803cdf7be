#pragma once

// Factoring a chain map X -> Y through complexes obtained from X by attaching
// free cells, one relative homology group at a time.

#include <vector>

#include "endotorsion/chain.hpp"

namespace endotorsion {

/// X -> X' -> Y with F^r attached to X in degree n.
template <class R>
struct Attachment {
  ChainComplex<R> complex;  // X'
  ChainMap<R> inclusion;    // X -> X'
  ChainMap<R> map;          // X' -> Y
};

using KillOne = Attachment<FieldElem>;
using DepthOne = Attachment<Poly>;

/// k : F^r -> H_n(cone g), given in the homology basis of homology(cone(g)).
/// Lifts k to cone cycles (y, x) and attaches F^r with boundary -x, mapping to
/// y. Asserts that the maps compose to g, that H_*(cone of the inclusion) is
/// F^r in degree n, and that the induced map to H_n(cone g) is k.
KillOne kill_one(const FChainMap& g, int n, const FMatrix& k);

struct FactorizationStage {
  int degree = 0;
  std::size_t rank = 0;  // cells attached
  FChain complex;
  FChainMap inclusion;  // previous stage -> this one
};

struct ConnectiveFactorization {
  std::vector<FactorizationStage> stages;
  FChainMap final_map;  // last stage -> Y, a quasi-isomorphism
};

/// Requires H_q(cone g) = 0 for q <= m; attaches cells to kill the lowest
/// relative homology until none is left.
ConnectiveFactorization connective_factorization(const FChainMap& g, int m);

/// Over F[t]: P = coker(i : P_1 -> P_0), and `cycles` (one cone cycle in
/// degree n per basis vector of P_0) lifts P_0 -> P -> H_n(cone g). Attaches
/// P_0 in degree n and P_1 in degree n + 1. Asserts exactness of the
/// resolution, the composite, and that the relative homology is P in degree n.
DepthOne kill_one_depth_one(const PChainMap& g, int n, const PMatrix& i, const PMatrix& cycles);

/// A chain map of complexes with endomorphisms; checks g f_X = f_Y g.
void require_equivariant(const ChainEndo& x, const ChainEndo& y, const FChainMap& g);

/// cone(g) with the endomorphism f_Y + f_X.
ChainEndo cone_endo(const ChainEndo& x, const ChainEndo& y, const FChainMap& g);

/// char_complex(x) -> char_complex(y) induced by g.
PChainMap char_chain_map(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, const std::string& var = "t");

/// The F-cycle c of cone(g) in degree n as a cycle of cone(char_chain_map(g)).
PMatrix char_cycles(const ChainEndo& x, const ChainEndo& y, int n, const FMatrix& cycles,
                    const std::string& var = "t");

struct LinearDepthOne {
  FMatrix alpha;       // k alpha = T k, with T the action on H_n(cone g)
  PMatrix resolution;  // t I - alpha
  DepthOne step;
};

/// k : F^r -> H_n(cone g) is an F-linear surjection (homology-basis
/// coordinates). Builds the t-action alpha on F^r and attaches to
/// char_complex(x) using the characteristic sequence of alpha.
LinearDepthOne kill_one_linear(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, int n, const FMatrix& k);

struct TorsionDepthOne {
  Poly p;               // p(T) = 0 on H_n(cone g), p a product of generators of S
  PMatrix resolution;   // p I
  DepthOne step;
  ChainEndo quotient;   // relative homology as a one-term endomorphism
  TorsionConditions conditions;
};

/// S-torsion variant: P = (F[t]/p)^m onto an F-basis of H_n(cone g), m its
/// dimension, resolved by p I. Errors when H_n(cone g) is not S-torsion.
TorsionDepthOne kill_one_s_torsion(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, int n,
                                   const MultSet& S, const FactorOptions& options = {});

/// Torsion homology over F[t] in one degree as F-vector space with t acting:
/// block companion matrices of the invariant factors. Throws on free summands.
Endo torsion_module_endo(const HomologyDegree<Poly>& h, const Field& field);

}  // namespace endotorsion
