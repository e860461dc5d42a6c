#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gqc {

// Word-packed 0/1 vector.  Query vectors and adjacency rows use this; the
// master-model inner loop is a word-wise AND/OR over these.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }

  int count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }

  bool intersects(const BitVec& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  void or_with(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  }

  void and_not(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::vector<int> ones() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace gqc
