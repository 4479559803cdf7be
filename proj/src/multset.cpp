#include "endotorsion/multset.hpp"

#include <algorithm>

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

void sort_unique(std::vector<Poly>& v) {
  std::sort(v.begin(), v.end(), PolyLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string list_string(const std::vector<Poly>& gens) {
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += gens[i].to_string();
  }
  return out + ">";
}

}  // namespace

MultSet::MultSet() : gens_{Poly::x(Field::rationals())} {}

MultSet::MultSet(std::vector<Poly> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw Error("a multiplicative set needs at least one generator");
  const Field F = gens_.front().field();
  for (const auto& g : gens_) {
    require_same_field(g.field(), F);
    if (g.degree() < 1 || !g.is_monic()) throw Error("generator must be monic of degree >= 1: " + g.to_string());
  }
  gens_.push_back(Poly::x(F, gens_.front().var()));
  sort_unique(gens_);
}

std::string MultSet::to_string() const { return list_string(gens_); }

DualSet::DualSet(Field field, std::vector<Poly> generators) : field_(field), gens_(std::move(generators)) {
  for (const auto& g : gens_) require_same_field(g.field(), field_);
  sort_unique(gens_);
}

std::string DualSet::to_string() const { return gens_.empty() ? "<1>" : list_string(gens_); }

DualSet multset_dual(const MultSet& S) {
  std::vector<Poly> out;
  for (const auto& g : S.generators()) {
    Poly r = renormalize(g);
    if (r.degree() >= 1) out.push_back(std::move(r));
  }
  return DualSet(S.field(), std::move(out));
}

bool divides_some_generator(const Poly& q, std::span<const Poly> generators) {
  return std::any_of(generators.begin(), generators.end(), [&](const Poly& g) { return divides(q, g); });
}

bool is_unit_in_localization(const RatFunc& f, std::span<const Poly> generators, const FactorOptions& options) {
  if (f.is_zero()) throw Error("zero is not a unit");
  for (const Poly* part : {&f.num(), &f.den()}) {
    if (part->degree() < 1) continue;
    for (const auto& q : irreducible_factors(*part, options)) {
      if (!divides_some_generator(q, generators)) return false;
    }
  }
  return true;
}

bool is_unit_in_localization(const RatFunc& f, const MultSet& S, const FactorOptions& options) {
  return is_unit_in_localization(f, std::span<const Poly>(S.generators()), options);
}

bool is_unit_in_localization(const RatFunc& f, const DualSet& T, const FactorOptions& options) {
  return is_unit_in_localization(f, std::span<const Poly>(T.generators()), options);
}

}  // namespace endotorsion
