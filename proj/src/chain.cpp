#include "endotorsion/chain.hpp"

#include <algorithm>
#include <type_traits>

#include "endotorsion/errors.hpp"
#include "blocks.hpp"

namespace endotorsion {

namespace {

using namespace detail;

template <class R>
bool is_unit_elem(const R& x) {
  if constexpr (std::is_same_v<R, Integer>) {
    return x == 1 || x == -1;
  } else {
    return x.degree() == 0;
  }
}

template <class R>
std::string group_string(const HomologyDegree<R>& h, const std::string& ring_name) {
  std::vector<std::string> parts;
  for (const auto& q : h.torsion) {
    if constexpr (std::is_same_v<R, Integer>) {
      parts.push_back(ring_name + "/" + q.get_str());
    } else if constexpr (std::is_same_v<R, Poly>) {
      parts.push_back(ring_name + "/(" + q.to_string() + ")");
    }
  }
  if (h.free_rank == 1) parts.push_back(ring_name);
  if (h.free_rank > 1) parts.push_back(ring_name + "^" + std::to_string(h.free_rank));
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out += " + " + parts[k];
  return out;
}

template <class R>
HomologyReport<R> pid_homology(const ChainComplex<R>& c) {
  HomologyReport<R> rep;
  int chi = 0;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const std::size_t n = c.dim(i);
    const auto s = smith_normal_form(c.d(i));
    const std::size_t r = s.rank();
    const Matrix<R> K = s.V.block(0, r, n, n - r);
    // Boundaries in the cycle basis: the first r coordinates vanish since d o d = 0.
    const Matrix<R> coords = s.Vinv * c.d(i + 1);
    const Matrix<R> W = coords.block(r, 0, n - r, coords.cols());
    if (!(K * W == c.d(i + 1))) throw IdentityViolation("boundaries do not lie in the cycles");
    const auto s2 = smith_normal_form(W);
    const Matrix<R> G = K * s2.Uinv;
    HomologyDegree<R> h;
    h.degree = i;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < s2.rank(); ++k) {
      if (is_unit_elem(s2.d[k])) continue;
      h.torsion.push_back(s2.d[k]);
      cols.push_back(k);
    }
    h.free_rank = (n - r) - s2.rank();
    for (std::size_t k = s2.rank(); k < n - r; ++k) cols.push_back(k);
    h.generators = Matrix<R>(c.ring(), n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) h.generators.set_block(0, j, G.column(cols[j]));
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<int>(h.free_rank);
    rep.degrees.push_back(std::move(h));
  }
  if (chi != c.euler_characteristic()) throw IdentityViolation("Euler characteristic mismatch in homology");
  rep.euler_characteristic = chi;
  return rep;
}

RatFunc one_over(const Field& F) { return RatFunc(Poly::constant(F.one())); }

}  // namespace

template <class R>
std::string HomologyReport<R>::to_string(const std::string& ring_name) const {
  std::string out;
  for (const auto& h : degrees) out += "H_" + std::to_string(h.degree) + " = " + group_string(h, ring_name) + "\n";
  return out;
}

template <class R>
bool HomologyReport<R>::acyclic() const {
  for (const auto& h : degrees)
    if (h.free_rank != 0 || !h.torsion.empty()) return false;
  return true;
}

template struct HomologyReport<Integer>;
template struct HomologyReport<FieldElem>;
template struct HomologyReport<Poly>;

HomologyReport<FieldElem> homology(const FChain& c) {
  HomologyReport<FieldElem> rep;
  int chi = 0;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const FMatrix Z = kernel_basis(c.d(i));
    const FMatrix B = image_basis(c.d(i + 1));
    const Rref r = rref(hstack(B, Z));
    HomologyDegree<FieldElem> h;
    h.degree = i;
    std::vector<std::size_t> cols;
    for (auto p : r.pivots)
      if (p >= B.cols()) cols.push_back(p - B.cols());
    h.free_rank = cols.size();
    h.generators = FMatrix(c.ring(), c.dim(i), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) h.generators.set_block(0, j, Z.column(cols[j]));
    if (h.free_rank != Z.cols() - B.cols()) throw IdentityViolation("rank-nullity fails in homology");
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<int>(h.free_rank);
    rep.degrees.push_back(std::move(h));
  }
  if (chi != c.euler_characteristic()) throw IdentityViolation("Euler characteristic mismatch in homology");
  rep.euler_characteristic = chi;
  return rep;
}

HomologyReport<Integer> homology(const ZChain& c) { return pid_homology(c); }
HomologyReport<Poly> homology(const PChain& c) { return pid_homology(c); }

FMatrix homology_coordinates(const FChain& c, const HomologyReport<FieldElem>& h, int i, const FMatrix& cycles) {
  if (!(c.d(i) * cycles).is_zero()) throw Error("not a cycle in degree " + std::to_string(i));
  const HomologyDegree<FieldElem>* hd = h.at(i);
  if (!hd) return FMatrix(c.ring(), 0, cycles.cols());
  const FMatrix B = image_basis(c.d(i + 1));
  const auto x = solve(hstack(B, hd->generators), cycles);
  if (!x) throw IdentityViolation("cycle outside the span of boundaries and generators");
  return x->block(B.cols(), 0, hd->free_rank, cycles.cols());
}

FMatrix induced_on_homology(const FChainMap& g, const HomologyReport<FieldElem>& hs,
                            const HomologyReport<FieldElem>& ht, int i) {
  const HomologyDegree<FieldElem>* src = hs.at(i);
  const HomologyDegree<FieldElem>* tgt = ht.at(i);
  const std::size_t rows = tgt ? tgt->free_rank : 0;
  if (!src) return FMatrix(g.source().ring(), rows, 0);
  const FMatrix images = g.g(i) * src->generators;
  if (!tgt) return FMatrix(g.source().ring(), 0, src->free_rank);
  return homology_coordinates(g.target(), ht, i, images);
}

FMatrix induced_on_homology(const FChainMap& g, int i) {
  return induced_on_homology(g, homology(g.source()), homology(g.target()), i);
}

template <class R>
ChainComplex<R> cone(const ChainMap<R>& g) {
  const auto& X = g.source();
  const auto& Y = g.target();
  const auto [lo, hi] = span_of({{Y.lo(), Y.hi()}, {X.lo() + 1, X.hi() + 1}});
  return build_complex<R>(
      Y.ring(), lo, hi, [&](int i) { return Y.dim(i) + X.dim(i - 1); },
      [&](int i) {
        Blocks<R> b(Y.ring(), {Y.dim(i - 1), X.dim(i - 2)}, {Y.dim(i), X.dim(i - 1)});
        b.set(0, 0, Y.d(i));
        b.set(0, 1, g.g(i - 1));
        b.set(1, 1, -X.d(i - 1));
        return b.take();
      });
}

template <class R>
Cylinder<R> cylinder(const ChainMap<R>& g) {
  using Mat = Matrix<R>;
  const auto& X = g.source();
  const auto& Y = g.target();
  const auto& ring = Y.ring();
  const auto [lo, hi] = span_of({{X.lo(), X.hi() + 1}, {Y.lo(), Y.hi()}});
  auto dims = [&](int i) { return std::vector<std::size_t>{X.dim(i), X.dim(i - 1), Y.dim(i)}; };
  ChainComplex<R> cyl = build_complex<R>(
      ring, lo, hi, [&](int i) { return X.dim(i) + X.dim(i - 1) + Y.dim(i); },
      [&](int i) {
        Blocks<R> b(ring, dims(i - 1), dims(i));
        b.set(0, 0, X.d(i));
        b.set(0, 1, -Mat::identity(ring, X.dim(i - 1)));
        b.set(1, 1, -X.d(i - 1));
        b.set(2, 1, g.g(i - 1));
        b.set(2, 2, Y.d(i));
        return b.take();
      });
  std::map<int, Mat> from_x, from_y, retract;
  for (int i = lo; i <= hi; ++i) {
    Blocks<R> a(ring, dims(i), {X.dim(i)});
    a.set(0, 0, Mat::identity(ring, X.dim(i)));
    from_x.emplace(i, a.take());
    Blocks<R> c(ring, dims(i), {Y.dim(i)});
    c.set(2, 0, Mat::identity(ring, Y.dim(i)));
    from_y.emplace(i, c.take());
    Blocks<R> r(ring, {Y.dim(i)}, dims(i));
    r.set(0, 0, g.g(i));
    r.set(0, 2, Mat::identity(ring, Y.dim(i)));
    retract.emplace(i, r.take());
  }
  return {cyl, ChainMap<R>(X, cyl, std::move(from_x)), ChainMap<R>(Y, cyl, std::move(from_y)),
          ChainMap<R>(cyl, Y, std::move(retract))};
}

template <class R>
ChainComplex<R> direct_sum(const ChainComplex<R>& a, const ChainComplex<R>& b) {
  const auto [lo, hi] = span_of({{a.lo(), a.hi()}, {b.lo(), b.hi()}});
  const auto& ring = a.empty() ? b.ring() : a.ring();
  return build_complex<R>(
      ring, lo, hi, [&](int i) { return a.dim(i) + b.dim(i); }, [&](int i) { return block_diag(a.d(i), b.d(i)); });
}

template ChainComplex<Integer> cone(const ChainMap<Integer>&);
template ChainComplex<FieldElem> cone(const ChainMap<FieldElem>&);
template ChainComplex<Poly> cone(const ChainMap<Poly>&);
template Cylinder<Integer> cylinder(const ChainMap<Integer>&);
template Cylinder<FieldElem> cylinder(const ChainMap<FieldElem>&);
template Cylinder<Poly> cylinder(const ChainMap<Poly>&);
template ChainComplex<Integer> direct_sum(const ChainComplex<Integer>&, const ChainComplex<Integer>&);
template ChainComplex<FieldElem> direct_sum(const ChainComplex<FieldElem>&, const ChainComplex<FieldElem>&);
template ChainComplex<Poly> direct_sum(const ChainComplex<Poly>&, const ChainComplex<Poly>&);

ChainEndo::ChainEndo(FChain base, std::vector<FMatrix> f) : base_(std::move(base)) {
  if (f.size() != base_.dims().size()) throw Error("endomorphism needs one matrix per degree");
  std::map<int, FMatrix> g;
  for (std::size_t k = 0; k < f.size(); ++k) g.emplace(base_.lo() + static_cast<int>(k), std::move(f[k]));
  map_ = FChainMap(base_, base_, std::move(g));
}

ChainEndo::ChainEndo(FChainMap f) : base_(f.source()), map_(std::move(f)) {
  if (!(map_.source().dims() == map_.target().dims()) || map_.source().lo() != map_.target().lo())
    throw Error("endomorphism must map a complex to itself");
}

ChainEndo ChainEndo::power(unsigned k) const {
  std::vector<FMatrix> f;
  for (int i = base_.lo(); i <= base_.hi(); ++i) f.push_back(matrix_pow(this->f(i), k));
  return ChainEndo(base_, std::move(f));
}

ChainEndo one_term(const Endo& e, int degree) {
  return ChainEndo(FChain::discrete(e.field(), degree, {e.n()}), {e.f()});
}

ChainEndo direct_sum(const ChainEndo& a, const ChainEndo& b) {
  const FChain base = direct_sum(a.base(), b.base());
  std::vector<FMatrix> f;
  for (int i = base.lo(); i <= base.hi(); ++i) f.push_back(block_diag(a.f(i), b.f(i)));
  return ChainEndo(base, std::move(f));
}

Telescope telescope_trunc(const ChainEndo& e, int stages, TelescopeDirection direction) {
  if (stages < 1) throw Error("telescope needs at least one stage");
  const FChain& C = e.base();
  const Field& F = C.ring();
  const auto N = static_cast<std::size_t>(stages);
  const bool forward = direction == TelescopeDirection::forward;
  auto layout = [&](int i) {
    std::vector<std::size_t> sizes(N + 1, C.dim(i));
    sizes.insert(sizes.end(), N, C.dim(i - 1));
    return sizes;
  };
  const int lo = C.empty() ? 0 : C.lo();
  const int hi = C.empty() ? -1 : C.hi() + 1;
  FChain T = build_complex<FieldElem>(
      F, lo, hi, [&](int i) { return (N + 1) * C.dim(i) + N * C.dim(i - 1); },
      [&](int i) {
        Blocks<FieldElem> b(F, layout(i - 1), layout(i));
        const FMatrix I = FMatrix::identity(F, C.dim(i - 1));
        for (std::size_t j = 0; j <= N; ++j) b.set(j, j, C.d(i));
        for (std::size_t j = 0; j < N; ++j) {
          b.set(N + 1 + j, N + 1 + j, -C.d(i - 1));
          b.set(j, N + 1 + j, forward ? -I : e.f(i - 1));
          b.set(j + 1, N + 1 + j, forward ? e.f(i - 1) : -I);
        }
        return b.take();
      });

  std::map<int, FMatrix> collapse, first, last;
  std::map<int, FMatrix> homotopy;
  for (int i = lo; i <= hi; ++i) {
    Blocks<FieldElem> c(F, {C.dim(i)}, layout(i));
    for (std::size_t j = 0; j <= N; ++j)
      c.set(0, j, matrix_pow(e.f(i), static_cast<unsigned>(forward ? N - j : j)));
    collapse.emplace(i, c.take());
    Blocks<FieldElem> a0(F, layout(i), {C.dim(i)});
    a0.set(0, 0, FMatrix::identity(F, C.dim(i)));
    first.emplace(i, a0.take());
    Blocks<FieldElem> aN(F, layout(i), {C.dim(i)});
    aN.set(N, 0, FMatrix::identity(F, C.dim(i)));
    last.emplace(i, aN.take());
    if (forward) {
      Blocks<FieldElem> h(F, layout(i + 1), {C.dim(i)});
      for (std::size_t j = 0; j < N; ++j) h.set(N + 1 + j, 0, matrix_pow(e.f(i), static_cast<unsigned>(j)));
      homotopy.emplace(i, h.take());
    }
  }
  Telescope tel{T, FChainMap(T, C, std::move(collapse)), FChainMap(C, T, std::move(first)),
                FChainMap(C, T, std::move(last)), std::move(homotopy)};

  // The collapse must be a quasi-isomorphism.
  const auto hT = homology(T);
  const auto hC = homology(C);
  for (int i = lo; i <= hi; ++i) {
    const FMatrix m = induced_on_homology(tel.collapse, hT, hC, i);
    if (m.rows() != m.cols() || rank(m) != m.rows())
      throw IdentityViolation("telescope collapse is not a quasi-isomorphism in degree " + std::to_string(i));
  }
  if (forward) {
    // d H + H d = include_last o f^N - include_first, degreewise.
    for (int i = lo; i <= hi; ++i) {
      const FMatrix lhs = T.d(i + 1) * tel.homotopy.at(i) +
                          (i - 1 >= lo ? tel.homotopy.at(i - 1) * C.d(i) : FMatrix(F, T.dim(i), C.dim(i)));
      const FMatrix rhs = tel.include_last.g(i) * matrix_pow(e.f(i), static_cast<unsigned>(N)) - tel.include_first.g(i);
      if (!(lhs == rhs)) throw IdentityViolation("telescope homotopy identity fails in degree " + std::to_string(i));
    }
  }
  return tel;
}

PChainMap char_map(const ChainEndo& e, const std::string& var) {
  const FChain& C = e.base();
  const PolyRing ring{C.ring(), var};
  std::vector<PMatrix> d;
  for (int i = C.lo() + 1; i <= C.hi(); ++i) d.push_back(to_poly(C.d(i), var));
  const PChain Ct(ring, C.lo(), C.dims(), std::move(d));
  std::map<int, PMatrix> g;
  for (int i = C.lo(); i <= C.hi(); ++i) g.emplace(i, char_matrix(e.f(i), var));
  return PChainMap(Ct, Ct, std::move(g));
}

PChain char_complex(const ChainEndo& e, const std::string& var) { return cone(char_map(e, var)); }

namespace {

RatFunc alternating(const ChainEndo& e, const std::function<Poly(int)>& factor_at, bool zeta) {
  RatFunc acc = one_over(e.field());
  for (int i = e.base().lo(); i <= e.base().hi(); ++i) {
    const RatFunc p(factor_at(i));
    const bool positive = (i % 2 == 0) != zeta;
    acc = positive ? acc * p : acc / p;
  }
  return acc;
}

std::vector<FMatrix> homology_maps(const ChainEndo& e) {
  const auto h = homology(e.base());
  std::vector<FMatrix> out;
  for (int i = e.base().lo(); i <= e.base().hi(); ++i) out.push_back(induced_on_homology(e.as_map(), h, h, i));
  return out;
}

}  // namespace

RatFunc graded_torsion(const ChainEndo& e) {
  return alternating(e, [&](int i) { return charpoly(e.f(i)); }, false);
}

RatFunc graded_zeta(const ChainEndo& e) {
  return alternating(e, [&](int i) { return one_minus_tf_det(e.f(i)); }, true);
}

RatFunc homology_torsion(const ChainEndo& e) {
  const auto hm = homology_maps(e);
  return alternating(e, [&](int i) { return charpoly(hm[static_cast<std::size_t>(i - e.base().lo())]); }, false);
}

RatFunc homology_zeta(const ChainEndo& e) {
  const auto hm = homology_maps(e);
  return alternating(e, [&](int i) { return one_minus_tf_det(hm[static_cast<std::size_t>(i - e.base().lo())]); },
                     true);
}

FMatrix homology_endo(const ChainEndo& e) {
  FMatrix acc(e.field(), 0, 0);
  for (const auto& m : homology_maps(e)) acc = block_diag(acc, m);
  return acc;
}

FieldElem lefschetz(const ChainEndo& e, unsigned k) {
  const auto hm = homology_maps(e);
  FieldElem acc = e.field().zero();
  for (std::size_t j = 0; j < hm.size(); ++j) {
    const FieldElem tr = trace(matrix_pow(hm[j], k));
    acc = ((e.base().lo() + static_cast<int>(j)) % 2 == 0) ? acc + tr : acc - tr;
  }
  return acc;
}

FieldElem chain_lefschetz(const ChainEndo& e, unsigned k) {
  FieldElem acc = e.field().zero();
  for (int i = e.base().lo(); i <= e.base().hi(); ++i) {
    const FieldElem tr = trace(matrix_pow(e.f(i), k));
    acc = (i % 2 == 0) ? acc + tr : acc - tr;
  }
  return acc;
}

TruncSeries lefschetz_zeta_series(const ChainEndo& e, std::size_t order) {
  const Field& F = e.field();
  if (F.characteristic() != 0) throw Error("exp undefined in positive characteristic");
  const auto hm = homology_maps(e);
  std::vector<FieldElem> s(order, F.zero());
  std::vector<FMatrix> powers;
  for (const auto& m : hm) powers.push_back(FMatrix::identity(F, m.rows()));
  for (std::size_t k = 1; k < order; ++k) {
    FieldElem L = F.zero();
    for (std::size_t j = 0; j < hm.size(); ++j) {
      powers[j] = powers[j] * hm[j];
      const FieldElem tr = trace(powers[j]);
      L = ((e.base().lo() + static_cast<int>(j)) % 2 == 0) ? L + tr : L - tr;
    }
    s[k] = L / F.from_int(static_cast<long long>(k));
  }
  TruncSeries z = series_exp(TruncSeries(F, order, std::move(s)));
  if (!(z == ratfunc_to_series(graded_zeta(e), order)))
    throw IdentityViolation("Lefschetz series disagrees with the closed-form zeta function");
  return z;
}

MilnorReport graded_milnor(const ChainEndo& e) {
  return make_milnor_report(graded_torsion(e), graded_zeta(e), e.base().euler_characteristic());
}

TorsionConditions torsion_conditions(const ChainEndo& e, const MultSet& S, const FactorOptions& options) {
  TorsionConditions out;
  const FMatrix h = homology_endo(e);
  const Field& F = e.field();
  const Poly mu = minpoly(h);
  std::vector<Poly> chosen;
  if (mu.degree() >= 1) {
    for (const auto& q : irreducible_factors(mu, options)) {
      const auto& gens = S.generators();
      auto it = std::find_if(gens.begin(), gens.end(), [&](const Poly& g) { return divides(q, g); });
      if (it == gens.end()) return out;
      if (std::find(chosen.begin(), chosen.end(), *it) == chosen.end()) chosen.push_back(*it);
    }
  }
  std::sort(chosen.begin(), chosen.end(), PolyLess{});
  Poly p = Poly::constant(F.one());
  for (const auto& g : chosen) p *= g;
  const FMatrix ph = eval_poly(p, h);
  FMatrix power = ph;
  int N = 1;
  while (!power.is_zero()) {
    if (N > static_cast<int>(h.rows())) throw IdentityViolation("p(f) is not nilpotent on homology");
    power = power * ph;
    ++N;
  }
  out.locally_nilpotent = p;
  out.exponent = N;
  out.annihilates = p.pow(static_cast<unsigned>(N));
  if (!eval_poly(*out.annihilates, h).is_zero()) throw IdentityViolation("p^N does not annihilate homology");
  return out;
}

}  // namespace endotorsion
