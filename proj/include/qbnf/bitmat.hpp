#pragma once
#include <cstdint>
#include <vector>

namespace qbnf {

// Square boolean matrix with 64-bit packed rows; used for relation tables
// over an enumerated value list, where composition becomes a boolean matrix
// product.
struct BitMat {
  int n = 0;
  int words = 0;
  std::vector<uint64_t> bits;

  BitMat() = default;
  explicit BitMat(int n_) : n(n_), words((n_ + 63) / 64), bits(static_cast<size_t>(n_) * words, 0) {}

  void set(int i, int j) { bits[static_cast<size_t>(i) * words + (j >> 6)] |= (uint64_t{1} << (j & 63)); }
  bool get(int i, int j) const {
    return (bits[static_cast<size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1;
  }
  const uint64_t* row(int i) const { return bits.data() + static_cast<size_t>(i) * words; }
  uint64_t* row(int i) { return bits.data() + static_cast<size_t>(i) * words; }

  static BitMat identity(int n_) {
    BitMat m(n_);
    for (int i = 0; i < n_; ++i) m.set(i, i);
    return m;
  }

  // Boolean product a*b (row i = union of the b-rows hit by a-row i).
  friend BitMat bm_mul(const BitMat& a, const BitMat& b) {
    BitMat c(a.n);
    for (int i = 0; i < a.n; ++i) {
      const uint64_t* ra = a.row(i);
      uint64_t* rc = c.row(i);
      for (int k = 0; k < a.n; ++k) {
        if ((ra[k >> 6] >> (k & 63)) & 1) {
          const uint64_t* rb = b.row(k);
          for (int w = 0; w < a.words; ++w) rc[w] |= rb[w];
        }
      }
    }
    return c;
  }

  // true iff a is contained in b cellwise.
  friend bool bm_subset(const BitMat& a, const BitMat& b) {
    for (size_t w = 0; w < a.bits.size(); ++w)
      if (a.bits[w] & ~b.bits[w]) return false;
    return true;
  }

  friend BitMat bm_or(const BitMat& a, const BitMat& b) {
    BitMat c = a;
    for (size_t w = 0; w < c.bits.size(); ++w) c.bits[w] |= b.bits[w];
    return c;
  }
};

}  // namespace qbnf
