#pragma once

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace pnb {

/// Fixed-width bit vector. Used both for markings (one bit per place) and
/// for boundary label words (one bit per port).
class Bits {
 public:
  Bits() = default;
  explicit Bits(uint32_t size) : n_(size), w_(words_for(size), 0) {}

  static Bits of(uint32_t size, std::initializer_list<uint32_t> idx) {
    Bits b(size);
    for (uint32_t i : idx) b.set(i);
    return b;
  }
  static Bits of(uint32_t size, const std::vector<uint32_t>& idx) {
    Bits b(size);
    for (uint32_t i : idx) b.set(i);
    return b;
  }

  uint32_t size() const { return n_; }

  bool test(uint32_t i) const {
    assert(i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(uint32_t i) {
    assert(i < n_);
    w_[i >> 6] |= uint64_t{1} << (i & 63);
  }
  void reset(uint32_t i) {
    assert(i < n_);
    w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += static_cast<uint32_t>(__builtin_popcountll(w));
    return c;
  }

  Bits& operator|=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  /// this := this \ o
  Bits& subtract(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  bool intersects(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  friend Bits operator|(Bits a, const Bits& b) {
    a |= b;
    return a;
  }
  friend Bits operator&(Bits a, const Bits& b) {
    a &= b;
    return a;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  bool operator<(const Bits& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return w_ < o.w_;
  }

  /// Word concatenation: bits of `o` follow the bits of `this`.
  Bits concat(const Bits& o) const {
    Bits r(n_ + o.n_);
    for (uint32_t i = 0; i < n_; ++i)
      if (test(i)) r.set(i);
    for (uint32_t i = 0; i < o.n_; ++i)
      if (o.test(i)) r.set(n_ + i);
    return r;
  }

  std::vector<uint32_t> indices() const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (uint32_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull ^ n_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  static size_t words_for(uint32_t n) { return (static_cast<size_t>(n) + 63) / 64; }

  uint32_t n_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsHash {
  size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace pnb
