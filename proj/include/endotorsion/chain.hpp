#pragma once

// Bounded chain complexes of finite free modules over Z, a field, or F[t];
// chain maps, endomorphisms, homology, cones, cylinders and telescopes, and
// the graded torsion and zeta invariants.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "endotorsion/endo.hpp"
#include "endotorsion/linalg.hpp"

namespace endotorsion {

/// C_lo, ..., C_hi with d_i : C_i -> C_{i-1}. Degrees outside [lo, hi] are
/// zero; d_lo is the zero map to C_{lo-1} = 0.
template <class R>
class ChainComplex {
 public:
  using Mat = Matrix<R>;
  using Context = typename RingTraits<R>::Context;

  ChainComplex() = default;
  /// d holds d_{lo+1}, ..., d_hi. Checks shapes and d o d = 0.
  ChainComplex(Context ring, int lo, std::vector<std::size_t> dims, std::vector<Mat> diffs)
      : ring_(std::move(ring)), lo_(lo), dims_(std::move(dims)), d_(std::move(diffs)) {
    if (dims_.empty() ? !d_.empty() : d_.size() != dims_.size() - 1)
      throw Error("chain complex needs one differential per adjacent pair of degrees");
    for (int i = lo_ + 1; i <= hi(); ++i) {
      const Mat& di = d_[static_cast<std::size_t>(i - lo_ - 1)];
      if (di.rows() != dim(i - 1) || di.cols() != dim(i))
        throw Error("differential d_" + std::to_string(i) + " has the wrong shape");
    }
    for (int i = lo_ + 2; i <= hi(); ++i)
      if (!(this->d(i - 1) * this->d(i)).is_zero()) throw Error("d o d != 0 at degree " + std::to_string(i));
  }

  /// Zero differentials.
  static ChainComplex discrete(const Context& ring, int lo, const std::vector<std::size_t>& dims) {
    std::vector<Mat> d;
    for (std::size_t k = 1; k < dims.size(); ++k) d.emplace_back(ring, dims[k - 1], dims[k]);
    return ChainComplex(ring, lo, dims, std::move(d));
  }

  const Context& ring() const { return ring_; }
  int lo() const { return lo_; }
  /// lo - 1 for the empty complex.
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::size_t dim(int i) const {
    return (i < lo_ || i > hi()) ? 0 : dims_[static_cast<std::size_t>(i - lo_)];
  }

  /// d_i : C_i -> C_{i-1}, a zero matrix outside the stored range.
  Mat d(int i) const {
    if (i <= lo_ || i > hi()) return Mat(ring_, dim(i - 1), dim(i));
    return d_[static_cast<std::size_t>(i - lo_ - 1)];
  }

  int euler_characteristic() const {
    int chi = 0;
    for (int i = lo_; i <= hi(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<int>(dim(i));
    return chi;
  }

  /// Same modules and maps on the degree range [lo, hi].
  ChainComplex with_range(int lo, int hi) const {
    std::vector<std::size_t> dims;
    std::vector<Mat> d;
    for (int i = lo; i <= hi; ++i) {
      dims.push_back(dim(i));
      if (i > lo) d.push_back(this->d(i));
    }
    return ChainComplex(ring_, lo, std::move(dims), std::move(d));
  }

  std::string to_string() const {
    std::string out;
    for (int i = lo_; i <= hi(); ++i) {
      out += "C_" + std::to_string(i) + " = rank " + std::to_string(dim(i));
      if (i > lo_) out += ", d_" + std::to_string(i) + " = " + d(i).to_string();
      out += "\n";
    }
    return out;
  }

 private:
  Context ring_{};
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Mat> d_;
};

template <class R>
class ChainMap {
 public:
  using Mat = Matrix<R>;
  using Complex = ChainComplex<R>;

  ChainMap() = default;
  /// components[i] : source_i -> target_i; missing degrees are zero. Checks
  /// shapes and that the map commutes with the differentials.
  ChainMap(Complex source, Complex target, std::map<int, Mat> components)
      : source_(std::move(source)), target_(std::move(target)), g_(std::move(components)) {
    for (const auto& [i, m] : g_)
      if (m.rows() != target_.dim(i) || m.cols() != source_.dim(i))
        throw Error("chain map component " + std::to_string(i) + " has the wrong shape");
    for (int i = lo(); i <= hi() + 1; ++i)
      if (!(target_.d(i) * g(i) == g(i - 1) * source_.d(i)))
        throw Error("map does not commute with the differentials at degree " + std::to_string(i));
  }

  static ChainMap identity(const Complex& c) {
    std::map<int, Mat> g;
    for (int i = c.lo(); i <= c.hi(); ++i) g.emplace(i, Mat::identity(c.ring(), c.dim(i)));
    return ChainMap(c, c, std::move(g));
  }

  static ChainMap zero(const Complex& source, const Complex& target) { return ChainMap(source, target, {}); }

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }

  int lo() const { return std::min(source_.lo(), target_.lo()); }
  int hi() const { return std::max(source_.hi(), target_.hi()); }

  Mat g(int i) const {
    auto it = g_.find(i);
    if (it != g_.end()) return it->second;
    return Mat(source_.ring(), target_.dim(i), source_.dim(i));
  }

  /// this o other.
  ChainMap compose_after(const ChainMap& other) const {
    std::map<int, Mat> c;
    for (int i = std::min(lo(), other.lo()); i <= std::max(hi(), other.hi()); ++i) {
      if (other.source().dim(i) == 0 && target_.dim(i) == 0) continue;
      c.emplace(i, g(i) * other.g(i));
    }
    return ChainMap(other.source(), target_, std::move(c));
  }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    for (int i = std::min(a.lo(), b.lo()); i <= std::max(a.hi(), b.hi()); ++i)
      if (!(a.g(i) == b.g(i))) return false;
    return true;
  }

 private:
  Complex source_, target_;
  std::map<int, Mat> g_;
};

using ZChain = ChainComplex<Integer>;
using FChain = ChainComplex<FieldElem>;
using PChain = ChainComplex<Poly>;
using ZChainMap = ChainMap<Integer>;
using FChainMap = ChainMap<FieldElem>;
using PChainMap = ChainMap<Poly>;

/// A chain complex over a field with an endomorphism f.
class ChainEndo {
 public:
  ChainEndo() = default;
  /// f[k] acts on degree lo + k. Checks that f is a chain map.
  ChainEndo(FChain base, std::vector<FMatrix> f);
  explicit ChainEndo(FChainMap f);

  const FChain& base() const { return base_; }
  const Field& field() const { return base_.ring(); }
  FMatrix f(int i) const { return map_.g(i); }
  const FChainMap& as_map() const { return map_; }
  /// Degreewise f^k.
  ChainEndo power(unsigned k) const;

 private:
  FChain base_;
  FChainMap map_;
};

/// One-term complex concentrated in degree 0.
ChainEndo one_term(const Endo& e, int degree = 0);

template <class R>
struct HomologyDegree {
  int degree = 0;
  std::size_t free_rank = 0;
  /// Non-unit invariant factors (empty over a field).
  std::vector<R> torsion;
  /// Cycle representatives: one column per torsion factor, then one per free
  /// summand.
  Matrix<R> generators;
};

template <class R>
struct HomologyReport {
  std::vector<HomologyDegree<R>> degrees;
  int euler_characteristic = 0;

  const HomologyDegree<R>* at(int degree) const {
    for (const auto& h : degrees)
      if (h.degree == degree) return &h;
    return nullptr;
  }
  /// "H_0 = Z\nH_1 = Z/2\n..." listing every degree of the complex.
  std::string to_string(const std::string& ring_name) const;
  bool acyclic() const;
};

/// Homology over a field by rank-nullity; generators complement the boundaries
/// inside the cycles. The Euler characteristic is cross-checked against ranks.
HomologyReport<FieldElem> homology(const FChain& c);
/// Homology over Z or F[t] by Smith normal form.
HomologyReport<Integer> homology(const ZChain& c);
HomologyReport<Poly> homology(const PChain& c);

/// Coordinates of cycles (columns) in the homology basis of degree i. Throws if
/// a column is not a cycle.
FMatrix homology_coordinates(const FChain& c, const HomologyReport<FieldElem>& h, int i, const FMatrix& cycles);
/// The map induced on H_i.
FMatrix induced_on_homology(const FChainMap& g, int i);
FMatrix induced_on_homology(const FChainMap& g, const HomologyReport<FieldElem>& hs,
                            const HomologyReport<FieldElem>& ht, int i);

/// Degree i is Y_i + X_{i-1}, d = [[d_Y, g], [0, -d_X]].
template <class R>
ChainComplex<R> cone(const ChainMap<R>& g);

template <class R>
struct Cylinder {
  ChainComplex<R> complex;  // degree i: X_i + X_{i-1} + Y_i
  ChainMap<R> from_source;  // a -> (a, 0, 0)
  ChainMap<R> from_target;  // c -> (0, 0, c)
  ChainMap<R> retraction;   // (a, b, c) -> g a + c
};

/// d(a, b, c) = (d a - b, -d b, d c + g b).
template <class R>
Cylinder<R> cylinder(const ChainMap<R>& g);

template <class R>
ChainComplex<R> direct_sum(const ChainComplex<R>& a, const ChainComplex<R>& b);

ChainEndo direct_sum(const ChainEndo& a, const ChainEndo& b);

enum class TelescopeDirection { forward, reverse };

/// N-stage truncated telescope on copies a_0..a_N of the base and connecting
/// copies b_0..b_{N-1} shifted up by one. Forward: d b_j = -d b_j - a_j + f a_{j+1};
/// the collapse a_j -> f^(N-j) lands on the last copy. Reverse:
/// d b_j = -d b_j + f a_j - a_{j+1}; the collapse a_j -> f^j lands on the base.
struct Telescope {
  FChain complex;
  FChainMap collapse;
  FChainMap include_first;  // base -> a_0
  FChainMap include_last;   // base -> a_N
  /// Forward only: H_i : C_i -> T_{i+1} with d H + H d = include_last o f^N - include_first.
  std::map<int, FMatrix> homotopy;
};

Telescope telescope_trunc(const ChainEndo& e, int stages, TelescopeDirection direction);

/// The map t - f on C[t].
PChainMap char_map(const ChainEndo& e, const std::string& var = "t");
/// cone(t - f) over F[t]; its homology is H_*(base) with t acting through f.
PChain char_complex(const ChainEndo& e, const std::string& var = "t");

/// prod_i det(tI - f_i)^((-1)^i).
RatFunc graded_torsion(const ChainEndo& e);
/// prod_i det(I - t f_i)^((-1)^(i+1)).
RatFunc graded_zeta(const ChainEndo& e);
/// The same products over the maps induced on homology.
RatFunc homology_torsion(const ChainEndo& e);
RatFunc homology_zeta(const ChainEndo& e);
/// sum_i (-1)^i tr(H_i(f)^k).
FieldElem lefschetz(const ChainEndo& e, unsigned k);
/// sum_i (-1)^i tr(f_i^k).
FieldElem chain_lefschetz(const ChainEndo& e, unsigned k);
/// exp(sum_k L(f^k) t^k / k) mod t^N; checked against graded_zeta.
TruncSeries lefschetz_zeta_series(const ChainEndo& e, std::size_t order);
MilnorReport graded_milnor(const ChainEndo& e);

struct TorsionConditions {
  /// p in S with p(f_*) nilpotent on homology.
  std::optional<Poly> locally_nilpotent;
  /// Least N with p(f_*)^N = 0.
  int exponent = 0;
  /// p^N, which annihilates homology.
  std::optional<Poly> annihilates;
};

/// Searches the generators of S for the two homology-level torsion conditions.
TorsionConditions torsion_conditions(const ChainEndo& e, const MultSet& S, const FactorOptions& options = {});

/// Block-diagonal map induced on total homology, degrees in increasing order.
FMatrix homology_endo(const ChainEndo& e);

}  // namespace endotorsion
