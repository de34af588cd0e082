#pragma once

#include <cstdint>
#include <vector>

#include "fma/common.hpp"

namespace fmalign {

// How rank queries are accelerated once a Bitmap is finalized.
//   kPrefixSums — one 64-bit running count per bit (reference implementation,
//                 O(1) rank, n words of overhead; used to cross-check).
//   kBlocks     — one 32-bit count per 64-bit word + popcount (default).
enum class RankMode : uint8_t { kBlocks = 0, kPrefixSums = 1 };

// Bit array over positions 1..n with rank/select support.  Position 0 is
// unused so that indices line up with 1-based entry numbering.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(uint64_t n);

  uint64_t size() const { return n_; }

  void set(uint64_t i);
  bool test(uint64_t i) const {
    return i <= n_ && ((words_[i >> 6] >> (i & 63)) & 1);
  }

  // Builds the rank acceleration; the bitmap is immutable afterwards.
  void finalize(RankMode mode = RankMode::kBlocks);
  bool finalized() const { return finalized_; }

  // Number of set bits in [1..i].  Requires finalize().
  uint64_t rank1(uint64_t i) const;
  // Position of the t-th set bit (t >= 1); throws if t > rank1(n).
  uint64_t select1(uint64_t t) const;
  uint64_t ones() const { return ones_; }

  const std::vector<uint64_t>& words() const { return words_; }
  // Rebuilds from raw words (used by deserialization).
  static Bitmap from_words(uint64_t n, std::vector<uint64_t> words, RankMode mode);

 private:
  uint64_t n_ = 0;
  std::vector<uint64_t> words_;
  RankMode mode_ = RankMode::kBlocks;
  bool finalized_ = false;
  uint64_t ones_ = 0;
  std::vector<uint32_t> block_rank_;   // kBlocks: set bits before each word
  std::vector<uint64_t> prefix_rank_;  // kPrefixSums: rank1(i) for every i
};

}  // namespace fmalign
