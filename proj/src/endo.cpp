#include "endotorsion/endo.hpp"

#include "endotorsion/errors.hpp"

namespace endotorsion {

Endo::Endo(FMatrix f) : f_(std::move(f)) {
  if (!f_.is_square()) throw Error("endomorphism matrix must be square");
}

MilnorReport make_milnor_report(const RatFunc& tau, const RatFunc& zeta, int chi) {
  MilnorReport r;
  r.tau = tau;
  r.zeta = zeta;
  r.zeta_at_inverse = zeta.at_inverse();
  r.product = r.zeta_at_inverse * tau;
  r.expected = RatFunc::t_power(tau.field(), chi, tau.var());
  r.chi = chi;
  r.holds = r.product == r.expected;
  return r;
}

void require_holds(const MilnorReport& report) {
  if (!report.holds)
    throw IdentityViolation("Milnor identity fails: product " + report.product.to_string() + " but expected " +
                            report.expected.to_string());
}

std::string MilnorReport::to_string() const {
  std::string out;
  out += "tau = " + tau.to_string() + "\n";
  out += "zeta = " + zeta.to_string() + "\n";
  out += "zeta(t^-1) = " + zeta_at_inverse.to_string() + "\n";
  out += "product = " + product.to_string() + "\n";
  out += "expected = " + expected.to_string() + " (chi = " + std::to_string(chi) + ")\n";
  out += holds ? "MILNOR OK\n" : "MILNOR FAILED\n";
  return out;
}

Poly one_minus_tf_det(const FMatrix& f, const std::string& var) {
  const Field& F = f.ring();
  const Poly t = Poly::x(F, var);
  PMatrix m = map_entries<FieldElem, Poly>(f, PolyRing{F, var}, [&](const FieldElem& x) { return -(x * t); });
  for (std::size_t i = 0; i < f.rows(); ++i) m(i, i) += Poly::constant(F.one(), var);
  return det(m).with_var(var);
}

RatFunc torsion(const Endo& e) { return RatFunc(charpoly(e.f())); }

RatFunc zeta_det(const Endo& e) {
  const Poly d = one_minus_tf_det(e.f());
  return RatFunc(Poly::constant(e.field().one()), d);
}

TruncSeries zeta_series(const Endo& e, std::size_t order) {
  const Field& F = e.field();
  if (F.characteristic() != 0) throw Error("exp undefined in positive characteristic");
  std::vector<FieldElem> s(order, F.zero());
  FMatrix power = FMatrix::identity(F, e.n());
  for (std::size_t k = 1; k < order; ++k) {
    power = power * e.f();
    s[k] = trace(power) / F.from_int(static_cast<long long>(k));
  }
  return series_exp(TruncSeries(F, order, std::move(s)));
}

MilnorReport milnor_identity(const Endo& e) {
  return make_milnor_report(torsion(e), zeta_det(e), static_cast<int>(e.n()));
}

bool is_s_torsion(const Endo& e, const MultSet& S, const FactorOptions& options) {
  const Poly mp = minpoly(e.f());
  if (mp.degree() < 1) return true;
  for (const auto& q : irreducible_factors(mp, options))
    if (!divides_some_generator(q, S.generators())) return false;
  return true;
}

std::vector<PrimaryComponent> primary_decompose(const Endo& e, const FactorOptions& options) {
  std::vector<PrimaryComponent> out;
  if (e.n() == 0) return out;
  const Factorization fac = factor(charpoly(e.f()), options);
  std::size_t total = 0;
  for (const auto& [p, m] : fac.factors) {
    FMatrix basis = kernel_basis(eval_poly(p.pow(static_cast<unsigned>(m)), e.f()));
    const std::size_t dim = basis.cols();
    if (dim != static_cast<std::size_t>(m * p.degree()))
      throw IdentityViolation("primary component of " + p.to_string() + " has the wrong dimension");
    auto restricted = solve(basis, e.f() * basis);
    if (!restricted) throw IdentityViolation("primary component is not invariant");
    if (!(charpoly(*restricted) == p.pow(static_cast<unsigned>(m))))
      throw IdentityViolation("restriction to a primary component has the wrong characteristic polynomial");
    total += dim;
    out.push_back({p, std::move(basis), m, std::move(*restricted)});
  }
  if (total != e.n()) throw IdentityViolation("primary components do not fill the space");
  return out;
}

bool zeta_unit_check(const Endo& e, const MultSet& S, const FactorOptions& options) {
  if (!is_s_torsion(e, S, options)) throw Error("not S-torsion");
  const RatFunc d(one_minus_tf_det(e.f()));
  const bool unit = is_unit_in_localization(d, multset_dual(S), options);
  if (!unit) throw IdentityViolation("det(I - tf) is not a unit in the T-localization");
  return unit;
}

}  // namespace endotorsion
