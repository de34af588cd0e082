#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "fma/common.hpp"

namespace fmalign {

// Set of string ids (1..m) backed by a fixed-universe bitset.  String sets
// label every collapsed suffix-array entry, so the representation is kept
// word-packed and comparisons cheap.
class StrSet {
 public:
  StrSet() = default;
  explicit StrSet(uint32_t m) : m_(m), w_((m + 64) / 64, 0) {}

  static StrSet all(uint32_t m) {
    StrSet s(m);
    for (uint32_t j = 1; j <= m; ++j) s.add(j);
    return s;
  }
  static StrSet of(uint32_t m, std::initializer_list<uint32_t> ids) {
    StrSet s(m);
    for (uint32_t j : ids) s.add(j);
    return s;
  }

  uint32_t universe() const { return m_; }

  void add(uint32_t j) {
    check(j);
    w_[j >> 6] |= uint64_t{1} << (j & 63);
  }
  void remove(uint32_t j) {
    check(j);
    w_[j >> 6] &= ~(uint64_t{1} << (j & 63));
  }
  bool contains(uint32_t j) const {
    if (j == 0 || j > m_) return false;
    return (w_[j >> 6] >> (j & 63)) & 1;
  }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += static_cast<uint32_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }
  bool is_all() const { return count() == m_; }

  StrSet& operator&=(const StrSet& o) {
    check_universe(o);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  StrSet& operator|=(const StrSet& o) {
    check_universe(o);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend StrSet operator&(StrSet a, const StrSet& b) { return a &= b; }
  friend StrSet operator|(StrSet a, const StrSet& b) { return a |= b; }
  bool operator==(const StrSet&) const = default;

  // Visits members in ascending id order.
  template <class F>
  void for_each(F f) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        f(static_cast<uint32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }
  std::vector<uint32_t> ids() const {
    std::vector<uint32_t> v;
    v.reserve(count());
    for_each([&](uint32_t j) { v.push_back(j); });
    return v;
  }
  uint32_t first() const {
    for (size_t wi = 0; wi < w_.size(); ++wi)
      if (w_[wi]) return static_cast<uint32_t>(wi * 64 + std::countr_zero(w_[wi]));
    return 0;
  }

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

 private:
  void check(uint32_t j) const {
    if (j == 0 || j > m_) throw ArgumentError("string id out of range");
  }
  void check_universe(const StrSet& o) const {
    if (m_ != o.m_) throw ArgumentError("string set universe mismatch");
  }

  uint32_t m_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace fmalign
