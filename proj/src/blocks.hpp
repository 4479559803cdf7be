#pragma once

// Block-matrix and degree-range helpers for building complexes.

#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

#include "endotorsion/chain.hpp"
#include "endotorsion/errors.hpp"

namespace endotorsion::detail {

// Assembles a matrix from blocks laid out along the given row and column sizes.
template <class R>
class Blocks {
 public:
  Blocks(const typename RingTraits<R>::Context& ring, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : row_off_(offsets(rows)), col_off_(offsets(cols)), m_(ring, row_off_.back(), col_off_.back()) {}

  void set(std::size_t r, std::size_t c, const Matrix<R>& b) {
    if (b.rows() != row_off_[r + 1] - row_off_[r] || b.cols() != col_off_[c + 1] - col_off_[c])
      throw Error("block has the wrong shape");
    m_.set_block(row_off_[r], col_off_[c], b);
  }

  Matrix<R>&& take() { return std::move(m_); }

 private:
  static std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> off{0};
    for (auto s : sizes) off.push_back(off.back() + s);
    return off;
  }

  std::vector<std::size_t> row_off_, col_off_;
  Matrix<R> m_;
};

// Degree range covering the nonempty inputs, or the empty range [0, -1].
inline std::pair<int, int> span_of(std::initializer_list<std::pair<int, int>> ranges) {
  int lo = 0, hi = -1;
  bool any = false;
  for (auto [a, b] : ranges) {
    if (a > b) continue;
    lo = any ? std::min(lo, a) : a;
    hi = any ? std::max(hi, b) : b;
    any = true;
  }
  return {lo, hi};
}

template <class R>
ChainComplex<R> build_complex(const typename RingTraits<R>::Context& ring, int lo, int hi,
                              const std::function<std::size_t(int)>& dim,
                              const std::function<Matrix<R>(int)>& diff) {
  std::vector<std::size_t> dims;
  std::vector<Matrix<R>> d;
  for (int i = lo; i <= hi; ++i) {
    dims.push_back(dim(i));
    if (i > lo) d.push_back(diff(i));
  }
  return ChainComplex<R>(ring, lo, std::move(dims), std::move(d));
}

}  // namespace endotorsion::detail
