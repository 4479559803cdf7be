#include "endotorsion/k_low.hpp"

#include <algorithm>

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

std::string compact(const Poly& p) {
  std::string s = p.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s.size() > 1 ? "{" + s + "}" : s;
}

void require_nonzero(const RatFunc& f) {
  if (f.is_zero()) throw Error("symbol entries must be nonzero");
}

void require_irreducible(const Poly& pi, const FactorOptions& options) {
  if (pi.degree() < 1 || !pi.is_monic()) throw Error("pi must be monic of positive degree");
  if (pi.degree() == 1) return;
  if (pi.field().is_extension()) throw Error("irreducibility over an extension field is only decided in degree 1");
  if (!is_irreducible(pi, options)) throw Error("pi is reducible");
}

FieldElem residue(const RatFunc& f, const Poly& pi) { return residue(f.num(), pi) / residue(f.den(), pi); }

}  // namespace

void Divisor::add(const Poly& p, int k) {
  if (k == 0) return;
  auto [it, inserted] = ords_.emplace(p, k);
  if (inserted) return;
  it->second += k;
  if (it->second == 0) ords_.erase(it);
}

int Divisor::ord(const Poly& p) const {
  auto it = ords_.find(p);
  return it == ords_.end() ? 0 : it->second;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (const auto& [p, k] : b.ords_) out.add(p, k);
  return out;
}

Divisor operator-(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (const auto& [p, k] : b.ords_) out.add(p, -k);
  return out;
}

std::string Divisor::to_string() const {
  if (ords_.empty()) return "0";
  std::string out;
  for (auto it = ords_.rbegin(); it != ords_.rend(); ++it) {
    if (!out.empty()) out += "; ";
    out += "ord_" + compact(it->first) + " = " + std::to_string(it->second);
  }
  return out;
}

Divisor divisor_of(const RatFunc& f, const FactorOptions& options) {
  if (f.is_zero()) throw Error("divisor of zero");
  Divisor d;
  for (const auto& [p, m] : factor(f.num(), options).factors) d.add(p, m);
  for (const auto& [p, m] : factor(f.den(), options).factors) d.add(p, -m);
  return d;
}

SplitDivisor divisor_of(const RatFunc& f, const MultSet& S, const FactorOptions& options) {
  SplitDivisor out;
  const Divisor all = divisor_of(f, options);
  for (const auto& [p, k] : all.support()) {
    if (divides_some_generator(p, S.generators())) {
      out.s_part.add(p, k);
    } else {
      out.outside.add(p, k);
    }
  }
  return out;
}

std::string BoundaryReport::to_string() const {
  return "divisor(tau) = " + from_torsion.to_string() + "\nprimary decomposition = " + from_decomposition.to_string() +
         "\n" + (holds ? "BOUNDARY OK" : "BOUNDARY FAILED") + "\n";
}

BoundaryReport boundary_report(const Endo& e, const MultSet& S, const FactorOptions& options) {
  if (!is_s_torsion(e, S, options)) throw Error("not S-torsion");
  BoundaryReport r;
  r.from_torsion = divisor_of(torsion(e), options);
  for (const auto& c : primary_decompose(e, options)) r.from_decomposition.add(c.p, c.multiplicity);
  r.holds = r.from_torsion == r.from_decomposition;
  if (!r.holds) throw IdentityViolation("boundary of the torsion differs from the primary decomposition");
  return r;
}

bool boundary_tau_check(const Endo& e, const MultSet& S, const FactorOptions& options) {
  return boundary_report(e, S, options).holds;
}

void K2Symbol::add(RatFunc f, RatFunc g, int sign) {
  require_nonzero(f);
  require_nonzero(g);
  if (sign != 1 && sign != -1) throw Error("symbol sign must be 1 or -1");
  require_same_field(f.field(), g.field());
  if (!terms_.empty()) require_same_field(terms_.front().f.field(), f.field());
  terms_.push_back({std::move(f), std::move(g), sign});
}

K2Symbol operator+(const K2Symbol& a, const K2Symbol& b) {
  K2Symbol out = a;
  for (const auto& t : b.terms_) out.add(t.f, t.g, t.sign);
  return out;
}

std::string K2Symbol::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k > 0) {
      out += t.sign > 0 ? " + " : " - ";
    } else if (t.sign < 0) {
      out += "-";
    }
    out += "{" + t.f.to_string() + ", " + t.g.to_string() + "}";
  }
  return out;
}

Field residue_field(const Poly& pi) {
  if (pi.degree() < 1) throw Error("pi must be monic of positive degree");
  if (pi.degree() == 1) return pi.field();
  return Field::extension(pi, pi.var());
}

FieldElem residue(const Poly& a, const Poly& pi) {
  if (pi.degree() == 1) return a.eval(-pi.coeff(0) / pi.lead());
  return FieldElem::from_ext_coeffs(residue_field(pi), (a % pi).coeffs());
}

FieldElem tame_symbol(const K2Symbol& sym, const Poly& pi, const FactorOptions& options) {
  require_irreducible(pi, options);
  FieldElem out = residue_field(pi).one();
  for (const auto& term : sym.terms()) {
    require_same_field(term.f.field(), pi.field());
    const int a = valuation(term.f, pi);
    const int b = valuation(term.g, pi);
    const RatFunc u = term.f.pow(b) / term.g.pow(a);
    FieldElem r = residue(u, pi);
    if ((a * b) % 2 != 0) r = -r;
    out *= term.sign > 0 ? r : r.inverse();
  }
  return out;
}

K2Symbol torsion_loop_symbol(const Poly& p, const FieldElem& u, const FactorOptions& options) {
  if (!p.field().is_rational()) throw Error("p must have rational coefficients");
  require_irreducible(p, options);
  const Field E = u.field();
  if (!E.is_extension() || !(E.modulus() == p) || !E.base().is_rational())
    throw Error("u must lie in Q[theta]/(p)");
  if (u.is_zero()) throw Error("u must be nonzero");
  const Poly t_minus_theta = Poly::x(E) - Poly::constant(E.generator());
  K2Symbol s;
  s.add(RatFunc(Poly::constant(u)), RatFunc(t_minus_theta));
  return s;
}

bool nontriviality_witness(const Poly& p, const FieldElem& u, const FactorOptions& options) {
  const K2Symbol s = torsion_loop_symbol(p, u, options);
  const Field E = u.field();
  const FieldElem r = tame_symbol(s, Poly::x(E) - Poly::constant(E.generator()), options);
  if (!(r == u)) throw IdentityViolation("tame symbol does not recover u");
  return !u.is_one();
}

}  // namespace endotorsion
