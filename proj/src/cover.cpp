#include "endotorsion/cover.hpp"

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

const Field& rationals() {
  static const Field Q = Field::rationals();
  return Q;
}

FChain to_rational(const ZChain& c) {
  std::vector<FMatrix> d;
  for (int i = c.lo() + 1; i <= c.hi(); ++i) d.push_back(to_field(c.d(i), rationals()));
  return FChain(rationals(), c.lo(), c.dims(), std::move(d));
}

ZMatrix zdiag(std::initializer_list<long> v) {
  ZMatrix m(IntegerRing{}, v.size(), v.size());
  std::size_t k = 0;
  for (long x : v) {
    m(k, k) = Integer(x);
    ++k;
  }
  return m;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

CellularSelfMap::CellularSelfMap(ZChain complex, std::vector<ZMatrix> theta, std::string label, bool reduced)
    : complex_(std::move(complex)), label_(std::move(label)), reduced_(reduced) {
  if (theta.size() != complex_.dims().size()) throw Error("theta needs one matrix per degree of the fiber");
  std::map<int, ZMatrix> g;
  for (std::size_t k = 0; k < theta.size(); ++k) g.emplace(complex_.lo() + static_cast<int>(k), std::move(theta[k]));
  theta_ = ZChainMap(complex_, complex_, std::move(g));
}

ChainEndo CellularSelfMap::rational() const {
  std::vector<FMatrix> f;
  for (int i = complex_.lo(); i <= complex_.hi(); ++i) f.push_back(to_field(theta(i), rationals()));
  return ChainEndo(to_rational(complex_), std::move(f));
}

bool CellularSelfMap::is_rational_equivalence() const {
  const ChainEndo e = rational();
  const auto h = homology(e.base());
  for (int i = complex_.lo(); i <= complex_.hi(); ++i) {
    const FMatrix m = induced_on_homology(e.as_map(), h, h, i);
    if (rank(m) != m.rows()) return false;
  }
  return true;
}

void CellularSelfMap::require_equivalence() const {
  if (!is_rational_equivalence()) throw Error("cover not Q(t)-acyclic");
}

ZChain mapping_torus(const CellularSelfMap& s) {
  ZChain C = s.complex();
  ZChainMap theta = s.theta();
  if (s.reduced()) {
    const ZChain point = ZChain::discrete(IntegerRing{}, 0, {1});
    const ZChain Cp = direct_sum(C, point);
    std::map<int, ZMatrix> g;
    for (int i = Cp.lo(); i <= Cp.hi(); ++i)
      g.emplace(i, block_diag(s.theta(i), ZMatrix::identity(IntegerRing{}, point.dim(i))));
    C = Cp;
    theta = ZChainMap(Cp, Cp, std::move(g));
  }
  std::map<int, ZMatrix> one_minus;
  for (int i = C.lo(); i <= C.hi(); ++i) one_minus.emplace(i, ZMatrix::identity(IntegerRing{}, C.dim(i)) - theta.g(i));
  const ZChain torus = cone(ZChainMap(C, C, std::move(one_minus)));
  if (torus.euler_characteristic() != 0) throw IdentityViolation("mapping torus has nonzero Euler characteristic");
  return torus;
}

CoverData cover_complex(const CellularSelfMap& s) {
  s.require_equivalence();
  CoverData out;
  out.torus = mapping_torus(s);
  out.cover = char_complex(s.rational());
  out.cover_homology = homology(out.cover);
  for (const auto& d : out.cover_homology.degrees)
    if (d.free_rank != 0) throw Error("cover not Q(t)-acyclic");
  std::vector<std::string> lines;
  for (int i = s.complex().lo(); i <= s.complex().hi(); ++i)
    if (s.complex().dim(i) > 0) lines.push_back("theta_" + std::to_string(i) + " = " + s.theta(i).to_string());
  out.deck = "t acts through theta: " + join(lines, ", ");
  return out;
}

RatFunc reidemeister_torsion(const CellularSelfMap& s) {
  s.require_equivalence();
  const ChainEndo e = s.rational();
  const RatFunc tau = graded_torsion(e);
  if (!(tau == homology_torsion(e))) throw IdentityViolation("chain and homology torsion disagree");
  return tau;
}

DeckZeta deck_zeta(const CellularSelfMap& s, std::size_t order) {
  const ChainEndo e = s.rational();
  DeckZeta out{homology_zeta(e), lefschetz_zeta_series(e, order), {}};
  if (!(out.closed == graded_zeta(e))) throw IdentityViolation("chain and homology zeta functions disagree");
  if (!(out.series == ratfunc_to_series(out.closed, order)))
    throw IdentityViolation("Lefschetz series disagrees with the closed form");
  for (std::size_t k = 1; k < order; ++k) out.lefschetz.push_back(lefschetz(e, static_cast<unsigned>(k)));
  return out;
}

MilnorReport milnor_check_cover(const CellularSelfMap& s) {
  const RatFunc tau = reidemeister_torsion(s);
  const RatFunc zeta = homology_zeta(s.rational());
  MilnorReport r = make_milnor_report(tau, zeta, s.complex().euler_characteristic());
  require_holds(r);
  return r;
}

ZMatrix monodromy_q() {
  ZMatrix m(IntegerRing{}, 2, 2);
  m(0, 1) = -1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  return m;
}

ZMatrix monodromy_r() {
  ZMatrix m(IntegerRing{}, 2, 2);
  m(0, 1) = -1;
  m(1, 0) = 1;
  return m;
}

CellularSelfMap builtin_example(const std::string& name, int n) {
  const IntegerRing Z;
  if (name == "trefoil")
    return CellularSelfMap(ZChain::discrete(Z, 0, {1, 2}), {zdiag({1}), monodromy_q()}, "trefoil", false);
  if (name != "prototype" && name != "reflection" && name != "closed") throw Error("unknown example: " + name);
  if (n < 1) throw Error("n must be at least 1");
  if (name == "prototype") return CellularSelfMap(ZChain::discrete(Z, n, {2}), {monodromy_q()}, "prototype", true);
  if (name == "reflection") return CellularSelfMap(ZChain::discrete(Z, n, {2}), {monodromy_r()}, "reflection", true);

  // S^n x S^n with cells in degrees 0, n, n, 2n; theta(x, y) = (r(y), x).
  std::vector<std::size_t> dims(static_cast<std::size_t>(2 * n + 1), 0);
  dims.front() = 1;
  dims[static_cast<std::size_t>(n)] = 2;
  dims.back() = 1;
  std::vector<ZMatrix> theta;
  for (int i = 0; i <= 2 * n; ++i) {
    if (i == 0) {
      theta.push_back(zdiag({1}));
    } else if (i == n) {
      theta.push_back(monodromy_r());
    } else if (i == 2 * n) {
      theta.push_back(zdiag({n % 2 == 0 ? -1 : 1}));
    } else {
      theta.emplace_back(Z, 0, 0);
    }
  }
  return CellularSelfMap(ZChain::discrete(Z, 0, dims), std::move(theta), "closed", false);
}

int period(const ZMatrix& m, int max_k) {
  const ZMatrix I = ZMatrix::identity(IntegerRing{}, m.rows());
  ZMatrix p = m;
  for (int k = 1; k <= max_k; ++k) {
    if (p == I) return k;
    p = p * m;
  }
  return 0;
}

std::string cover_report(const CellularSelfMap& s, std::size_t order) {
  std::string out;
  const CoverData cd = cover_complex(s);
  const auto ht = homology(cd.torus);
  out += "H_*(E; Z):\n" + ht.to_string("Z");
  // Homology of a circle: Z in degrees 0 and 1.
  bool circle = true, rational_circle = true;
  for (const auto& h : ht.degrees) {
    const std::size_t expected = h.degree == 0 || h.degree == 1 ? 1 : 0;
    if (h.free_rank != expected) rational_circle = false;
    if (h.free_rank != expected || !h.torsion.empty()) circle = false;
  }
  out += "homology circle: " + yes_no(circle) + "\n";
  out += "rational homology circle: " + yes_no(rational_circle) + "\n";
  out += "H_*(cover; Q[t]):\n" + cd.cover_homology.to_string("Q[t]");

  const MilnorReport r = milnor_check_cover(s);
  const DeckZeta z = deck_zeta(s, order);
  out += "zeta (normalized at t = 0) = " + z.closed.to_string_at_zero() + "\n";
  out += r.to_string();
  out += "zeta series = " + z.series.to_string() + "\n";
  std::vector<std::string> ls;
  for (std::size_t k = 0; k < std::min<std::size_t>(6, z.lefschetz.size()); ++k)
    ls.push_back(z.lefschetz[k].to_string());
  out += "L(theta^k), k = 1.." + std::to_string(ls.size()) + ": " + join(ls, ", ") + "\n";
  return out;
}

std::string gallery_report(const std::string& name, int n, std::size_t order) {
  const CellularSelfMap s = builtin_example(name, n);
  const int deg = name == "trefoil" ? 1 : n;
  const std::string sn = "S^" + std::to_string(n);
  std::string out = "== " + name + (name == "trefoil" ? "" : " (n = " + std::to_string(n) + ")") + " ==\n";
  if (name == "prototype" || name == "reflection") out += "fiber: reduced " + sn + " v " + sn + "\n";
  if (name == "trefoil") out += "fiber: punctured torus (Seifert surface of the trefoil)\n";
  if (name == "closed") out += "fiber: " + sn + " x " + sn + ", theta(x, y) = (r(y), x)\n";
  for (int i = s.complex().lo(); i <= s.complex().hi(); ++i)
    if (s.complex().dim(i) > 0) out += "theta_" + std::to_string(i) + " = " + s.theta(i).to_string() + "\n";

  const ZMatrix mono = s.theta(deg);
  const FMatrix monoQ = to_field(mono, rationals());
  out += "charpoly(theta_" + std::to_string(deg) + ") = " + charpoly(monoQ).to_string() + "\n";
  const Integer d = det(ZMatrix::identity(IntegerRing{}, 2) - mono);
  out += "det(I - theta_" + std::to_string(deg) + ") = " + d.get_str() +
         (d == 1 || d == -1 ? " (unimodular)" : " (not unimodular)") + "\n";
  const int p = period(mono);
  out += "period of theta_" + std::to_string(deg) + " = " + (p ? std::to_string(p) : std::string("none")) + "\n";
  const ZMatrix I = ZMatrix::identity(IntegerRing{}, 2);
  if (name == "trefoil") out += "Q^6 = I: " + yes_no(matrix_pow(mono, 6) == I) + "\n";
  if (name == "reflection") out += "R^4 = I: " + yes_no(matrix_pow(mono, 4) == I) + "\n";

  return out + cover_report(s, order);
}

}  // namespace endotorsion
