#pragma once

// Finitely generated multiplicative sets of polynomials and the localizations
// they define.

#include <span>
#include <string>
#include <vector>

#include "endotorsion/factor.hpp"

namespace endotorsion {

/// S: the multiplicative closure of finitely many monic polynomials of
/// positive degree. Always contains t.
class MultSet {
 public:
  /// S = <t> over Q.
  MultSet();
  /// Throws unless every generator is monic of degree >= 1. Inserts t when
  /// absent; generators are deduplicated and sorted.
  explicit MultSet(std::vector<Poly> generators);

  const std::vector<Poly>& generators() const { return gens_; }
  const Field& field() const { return gens_.front().field(); }

  std::string to_string() const;

 private:
  std::vector<Poly> gens_;
};

/// T = { p~ : p in S }, the renormalized set. Generators have constant term 1
/// and T may be trivial (inverting only units).
class DualSet {
 public:
  DualSet(Field field, std::vector<Poly> generators);

  const std::vector<Poly>& generators() const { return gens_; }
  const Field& field() const { return field_; }
  bool is_trivial() const { return gens_.empty(); }

  std::string to_string() const;

 private:
  Field field_;
  std::vector<Poly> gens_;
};

/// Renormalize every generator of S and drop the ones that become 1.
DualSet multset_dual(const MultSet& S);

/// True iff every irreducible factor of num(f) and den(f) divides some
/// generator. f must be nonzero.
bool is_unit_in_localization(const RatFunc& f, std::span<const Poly> generators,
                             const FactorOptions& options = {});
bool is_unit_in_localization(const RatFunc& f, const MultSet& S, const FactorOptions& options = {});
bool is_unit_in_localization(const RatFunc& f, const DualSet& T, const FactorOptions& options = {});

/// True iff the irreducible q divides some generator.
bool divides_some_generator(const Poly& q, std::span<const Poly> generators);

}  // namespace endotorsion
