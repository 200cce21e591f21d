#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace packclass {

// Fixed-universe bitset over vertex indices [0, size). Bits beyond `size`
// are always zero.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  static VertexSet full(std::size_t size) {
    VertexSet s(size);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return size_; }

  bool test(std::size_t v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(std::size_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(std::size_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void assign(std::size_t v, bool on) { on ? set(v) : reset(v); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  bool any() const { return !empty(); }

  // Index of the lowest member, or universe() when empty.
  std::size_t first() const { return next(0); }
  // Lowest member >= from, or universe().
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return size_;
      w = words_[wi];
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t v = first(); v < size_; v = next(v + 1)) out.push_back(v);
    return out;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  VertexSet operator~() const {
    VertexSet r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void trim() {
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 1> words_;
};

}  // namespace packclass
