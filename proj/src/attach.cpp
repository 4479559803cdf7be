#include "endotorsion/attach.hpp"

#include "blocks.hpp"
#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

using namespace detail;

template <class R>
const typename RingTraits<R>::Context& ring_of(const ChainMap<R>& g) {
  return g.target().empty() ? g.source().ring() : g.target().ring();
}

/// Attaches P_0 = R^p0 in degree n with boundary h and P_1 = R^p1 in degree
/// n + 1 with boundary (c, i); the map to Y is y on P_0 and b on P_1.
template <class R>
Attachment<R> attach_cells(const ChainMap<R>& g, int n, const Matrix<R>& h, const Matrix<R>& y, const Matrix<R>& c,
                           const Matrix<R>& i, const Matrix<R>& b) {
  using Mat = Matrix<R>;
  const auto& X = g.source();
  const auto& Y = g.target();
  const auto& ring = ring_of(g);
  const std::size_t p0 = h.cols(), p1 = i.cols();
  if (p0 == 0 && p1 == 0) return {X, ChainMap<R>::identity(X), g};

  auto extra = [&](int k) -> std::size_t { return k == n ? p0 : (k == n + 1 ? p1 : 0); };
  const auto [lo, hi] = span_of({{X.lo(), X.hi()}, {n, p1 > 0 ? n + 1 : n}});
  ChainComplex<R> Xp = build_complex<R>(
      ring, lo, hi, [&](int k) { return X.dim(k) + extra(k); },
      [&](int k) {
        Blocks<R> d(ring, {X.dim(k - 1), extra(k - 1)}, {X.dim(k), extra(k)});
        d.set(0, 0, X.d(k));
        if (k == n) d.set(0, 1, h);
        if (k == n + 1) {
          d.set(0, 1, c);
          d.set(1, 1, i);
        }
        return d.take();
      });

  std::map<int, Mat> incl, to_y;
  for (int k = lo; k <= hi; ++k) {
    Blocks<R> a(ring, {X.dim(k), extra(k)}, {X.dim(k)});
    a.set(0, 0, Mat::identity(ring, X.dim(k)));
    incl.emplace(k, a.take());
    Blocks<R> m(ring, {Y.dim(k)}, {X.dim(k), extra(k)});
    m.set(0, 0, g.g(k));
    if (k == n) m.set(0, 1, y);
    if (k == n + 1) m.set(0, 1, b);
    to_y.emplace(k, m.take());
  }
  ChainMap<R> inclusion(X, Xp, std::move(incl));
  ChainMap<R> map(Xp, Y, std::move(to_y));
  if (!(map.compose_after(inclusion) == g)) throw IdentityViolation("attached map does not restrict to g");
  return {std::move(Xp), std::move(inclusion), std::move(map)};
}

/// The split P_0 -> cone(inclusion)_n, e -> (0, e, -h e), pushed to cone(g)
/// by map + id must reproduce the lifted cycles.
template <class R>
void check_split(const Attachment<R>& a, const ChainMap<R>& g, int n, const Matrix<R>& h, const Matrix<R>& cycles) {
  const auto& X = g.source();
  const auto& ring = ring_of(g);
  const std::size_t p0 = h.cols();
  const ChainComplex<R> rel = cone(a.inclusion);
  Blocks<R> s(ring, {X.dim(n), p0, X.dim(n - 1)}, {p0});
  s.set(1, 0, Matrix<R>::identity(ring, p0));
  s.set(2, 0, -h);
  const Matrix<R> split = s.take();
  if (!(rel.d(n) * split).is_zero()) throw IdentityViolation("split of the attached cells is not a cycle");
  const Matrix<R> pushed = vstack(a.map.g(n) * split.block(0, 0, a.complex.dim(n), p0),
                                  split.block(a.complex.dim(n), 0, X.dim(n - 1), p0));
  if (!(pushed == cycles)) throw IdentityViolation("attached cells do not map to the lifted cycles");
}

}  // namespace

KillOne kill_one(const FChainMap& g, int n, const FMatrix& k) {
  const Field& F = ring_of(g);
  const auto& X = g.source();
  const auto& Y = g.target();
  const FChain C = cone(g);
  const auto hC = homology(C);
  const HomologyDegree<FieldElem>* hd = hC.at(n);
  const std::size_t m = hd ? hd->free_rank : 0;
  if (k.rows() != m)
    throw Error("k must have one row per basis vector of H_" + std::to_string(n) + "(cone), here " +
                std::to_string(m));
  const std::size_t r = k.cols();
  const FMatrix z = (hd ? hd->generators : FMatrix(F, C.dim(n), 0)) * k;
  const FMatrix y = z.block(0, 0, Y.dim(n), r);
  const FMatrix h = -z.block(Y.dim(n), 0, X.dim(n - 1), r);
  KillOne out = attach_cells<FieldElem>(g, n, h, y, FMatrix(F, X.dim(n), 0), FMatrix(F, r, 0),
                                        FMatrix(F, Y.dim(n + 1), 0));
  if (r == 0) return out;

  const auto hrel = homology(cone(out.inclusion));
  for (const auto& d : hrel.degrees)
    if (d.free_rank != (d.degree == n ? r : 0))
      throw IdentityViolation("relative homology of the attachment is not F^r in degree " + std::to_string(n));
  check_split(out, g, n, h, z);
  if (!(homology_coordinates(C, hC, n, z) == k)) throw IdentityViolation("induced map on relative homology is not k");
  return out;
}

ConnectiveFactorization connective_factorization(const FChainMap& g, int m) {
  for (const auto& d : homology(cone(g)).degrees)
    if (d.degree <= m && d.free_rank != 0)
      throw Error("map is not " + std::to_string(m) + "-connected: H_" + std::to_string(d.degree) +
                  "(cone) is nonzero");
  ConnectiveFactorization out;
  FChainMap current = g;
  FChainMap composite = FChainMap::identity(g.source());
  int last = m;
  for (;;) {
    const auto h = homology(cone(current));
    const HomologyDegree<FieldElem>* low = nullptr;
    for (const auto& d : h.degrees)
      if (d.free_rank != 0) {
        low = &d;
        break;
      }
    if (!low) break;
    if (low->degree <= last) throw IdentityViolation("relative homology reappeared below the attached cells");
    last = low->degree;
    const FMatrix k = FMatrix::identity(ring_of(g), low->free_rank);
    KillOne step = kill_one(current, low->degree, k);
    composite = step.inclusion.compose_after(composite);
    out.stages.push_back({low->degree, low->free_rank, step.complex, step.inclusion});
    current = step.map;
  }
  if (!(current.compose_after(composite) == g)) throw IdentityViolation("factorization does not compose to g");
  if (!homology(cone(current)).acyclic()) throw IdentityViolation("last map of the factorization is not a quasi-isomorphism");
  out.final_map = current;
  return out;
}

DepthOne kill_one_depth_one(const PChainMap& g, int n, const PMatrix& i, const PMatrix& cycles) {
  const auto& X = g.source();
  const auto& Y = g.target();
  const PChain C = cone(g);
  if (cycles.rows() != C.dim(n) || cycles.cols() != i.rows())
    throw Error("lift must have one cone cycle per generator of P_0");
  if (!(C.d(n) * cycles).is_zero()) throw Error("lift is not a cycle of the cone");
  const auto si = smith_normal_form(i);
  if (si.rank() != i.cols()) throw Error("resolution is not exact: P_1 -> P_0 is not injective");
  const auto W = pid_solve(C.d(n + 1), cycles * i);
  if (!W) throw Error("resolution is not exact: P_1 does not map to boundaries");

  const std::size_t p0 = i.rows(), p1 = i.cols();
  const PMatrix y = cycles.block(0, 0, Y.dim(n), p0);
  const PMatrix h = -cycles.block(Y.dim(n), 0, X.dim(n - 1), p0);
  const PMatrix b = W->block(0, 0, Y.dim(n + 1), p1);
  const PMatrix c = -W->block(Y.dim(n + 1), 0, X.dim(n), p1);
  DepthOne out = attach_cells<Poly>(g, n, h, y, c, i, b);
  if (p0 == 0) return out;

  std::vector<Poly> expected;
  for (const auto& d : si.d)
    if (d.degree() > 0) expected.push_back(d);
  const auto hrel = homology(cone(out.inclusion));
  for (const auto& d : hrel.degrees) {
    const bool here = d.degree == n;
    if (d.free_rank != (here ? p0 - p1 : 0) || !(d.torsion == (here ? expected : std::vector<Poly>{})))
      throw IdentityViolation("relative homology of the attachment is not coker(i) in degree " + std::to_string(n));
  }
  check_split(out, g, n, h, cycles);
  return out;
}

void require_equivariant(const ChainEndo& x, const ChainEndo& y, const FChainMap& g) {
  if (!(g.source().dims() == x.base().dims()) || !(g.target().dims() == y.base().dims()))
    throw Error("map does not match the complexes of the endomorphisms");
  for (int i = g.lo(); i <= g.hi(); ++i)
    if (!(g.g(i) * x.f(i) == y.f(i) * g.g(i)))
      throw Error("map does not commute with the endomorphisms in degree " + std::to_string(i));
}

ChainEndo cone_endo(const ChainEndo& x, const ChainEndo& y, const FChainMap& g) {
  require_equivariant(x, y, g);
  const FChain C = cone(g);
  std::vector<FMatrix> f;
  for (int i = C.lo(); i <= C.hi(); ++i) f.push_back(block_diag(y.f(i), x.f(i - 1)));
  return ChainEndo(C, std::move(f));
}

PChainMap char_chain_map(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, const std::string& var) {
  require_equivariant(x, y, g);
  const PChain Xt = char_complex(x, var);
  const PChain Yt = char_complex(y, var);
  std::map<int, PMatrix> c;
  for (int i = Xt.lo(); i <= Xt.hi(); ++i) c.emplace(i, to_poly(block_diag(g.g(i), g.g(i - 1)), var));
  return PChainMap(Xt, Yt, std::move(c));
}

PMatrix char_cycles(const ChainEndo& x, const ChainEndo& y, int n, const FMatrix& cycles, const std::string& var) {
  const FChain& X = x.base();
  const FChain& Y = y.base();
  if (cycles.rows() != Y.dim(n) + X.dim(n - 1)) throw Error("cycles do not live in cone degree " + std::to_string(n));
  const Field& F = cycles.ring();
  const std::size_t r = cycles.cols();
  Blocks<FieldElem> b(F, {Y.dim(n), Y.dim(n - 1), X.dim(n - 1), X.dim(n - 2)}, {r});
  b.set(0, 0, cycles.block(0, 0, Y.dim(n), r));
  b.set(2, 0, cycles.block(Y.dim(n), 0, X.dim(n - 1), r));
  return to_poly(b.take(), var);
}

LinearDepthOne kill_one_linear(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, int n, const FMatrix& k) {
  const ChainEndo ce = cone_endo(x, y, g);
  const auto h = homology(ce.base());
  const FMatrix T = induced_on_homology(ce.as_map(), h, h, n);
  const HomologyDegree<FieldElem>* hd = h.at(n);
  const std::size_t m = hd ? hd->free_rank : 0;
  if (k.rows() != m) throw Error("k must have one row per basis vector of H_" + std::to_string(n) + "(cone)");
  if (rank(k) != m) throw Error("k is not surjective onto H_" + std::to_string(n) + "(cone)");
  const auto alpha = solve(k, T * k);
  if (!alpha || !(k * *alpha == T * k)) throw IdentityViolation("no t-action on P makes k equivariant");
  LinearDepthOne out;
  out.alpha = *alpha;
  out.resolution = char_matrix(out.alpha);
  const FMatrix z = (hd ? hd->generators : FMatrix(k.ring(), ce.base().dim(n), 0)) * k;
  out.step = kill_one_depth_one(char_chain_map(x, y, g), n, out.resolution, char_cycles(x, y, n, z));
  return out;
}

Endo torsion_module_endo(const HomologyDegree<Poly>& h, const Field& field) {
  if (h.free_rank != 0) throw Error("homology has a free summand over F[t]");
  FMatrix acc(field, 0, 0);
  for (const auto& q : h.torsion) {
    const auto d = static_cast<std::size_t>(q.degree());
    FMatrix c(field, d, d);
    for (std::size_t j = 0; j + 1 < d; ++j) c(j + 1, j) = field.one();
    for (std::size_t j = 0; j < d; ++j) c(j, d - 1) = -q.coeff(j);
    acc = block_diag(acc, c);
  }
  return Endo(acc);
}

TorsionDepthOne kill_one_s_torsion(const ChainEndo& x, const ChainEndo& y, const FChainMap& g, int n,
                                   const MultSet& S, const FactorOptions& options) {
  const ChainEndo ce = cone_endo(x, y, g);
  const auto h = homology(ce.base());
  const FMatrix T = induced_on_homology(ce.as_map(), h, h, n);
  const TorsionConditions tc = torsion_conditions(one_term(Endo(T)), S, options);
  if (!tc.annihilates) throw Error("H_" + std::to_string(n) + "(cone) is not S-torsion");
  const Field& F = T.ring();
  const std::size_t m = T.rows();
  TorsionDepthOne out;
  out.p = *tc.annihilates;
  const PolyRing ring{F, "t"};
  out.resolution = out.p * PMatrix::identity(ring, m);
  const HomologyDegree<FieldElem>* hd = h.at(n);
  const FMatrix z = hd ? hd->generators : FMatrix(F, ce.base().dim(n), 0);
  out.step = kill_one_depth_one(char_chain_map(x, y, g), n, out.resolution, char_cycles(x, y, n, z));
  const auto hrel = homology(cone(out.step.inclusion));
  const HomologyDegree<Poly>* rel = hrel.at(n);
  out.quotient = one_term(rel ? torsion_module_endo(*rel, F) : Endo(FMatrix(F, 0, 0)), n);
  out.conditions = torsion_conditions(out.quotient, S, options);
  if (!out.conditions.annihilates) throw IdentityViolation("attached quotient is not S-torsion");
  return out;
}

}  // namespace endotorsion
