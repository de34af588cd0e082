#include "fma/bitvec.hpp"

#include <algorithm>
#include <bit>

namespace fmalign {

Bitmap::Bitmap(uint64_t n) : n_(n), words_((n + 1 + 63) / 64, 0) {}

void Bitmap::set(uint64_t i) {
  if (i == 0 || i > n_) throw ArgumentError("bit index out of range");
  if (finalized_) throw ArgumentError("bitmap is finalized");
  words_[i >> 6] |= uint64_t{1} << (i & 63);
}

void Bitmap::finalize(RankMode mode) {
  mode_ = mode;
  if (mode == RankMode::kBlocks) {
    block_rank_.assign(words_.size() + 1, 0);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
      block_rank_[w] = static_cast<uint32_t>(acc);
      acc += std::popcount(words_[w]);
    }
    block_rank_[words_.size()] = static_cast<uint32_t>(acc);
    ones_ = acc;
  } else {
    prefix_rank_.assign(n_ + 1, 0);
    uint64_t acc = 0;
    for (uint64_t i = 1; i <= n_; ++i) {
      if (test(i)) ++acc;
      prefix_rank_[i] = acc;
    }
    ones_ = acc;
  }
  finalized_ = true;
}

uint64_t Bitmap::rank1(uint64_t i) const {
  if (!finalized_) throw ArgumentError("bitmap rank before finalize");
  if (i > n_) i = n_;
  if (mode_ == RankMode::kPrefixSums) return prefix_rank_[i];
  uint64_t w = i >> 6;
  uint64_t mask = (i & 63) == 63 ? ~uint64_t{0} : ((uint64_t{1} << ((i & 63) + 1)) - 1);
  return block_rank_[w] + std::popcount(words_[w] & mask);
}

uint64_t Bitmap::select1(uint64_t t) const {
  if (!finalized_ || t == 0 || t > ones_) throw ArgumentError("select out of range");
  if (mode_ == RankMode::kPrefixSums) {
    // Binary search the prefix array.
    auto it = std::lower_bound(prefix_rank_.begin(), prefix_rank_.end(), t);
    return static_cast<uint64_t>(it - prefix_rank_.begin());
  }
  // Find the word holding the t-th bit, then walk its bits.
  size_t lo = 0, hi = words_.size();
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (block_rank_[mid] < t)
      lo = mid;
    else
      hi = mid;
  }
  uint64_t remaining = t - block_rank_[lo];
  uint64_t w = words_[lo];
  while (remaining > 1) {
    w &= w - 1;
    --remaining;
  }
  return lo * 64 + std::countr_zero(w);
}

Bitmap Bitmap::from_words(uint64_t n, std::vector<uint64_t> words, RankMode mode) {
  Bitmap b;
  b.n_ = n;
  if (words.size() != (n + 1 + 63) / 64) throw FormatError("bitmap word count mismatch");
  b.words_ = std::move(words);
  if (!b.words_.empty() && (b.words_[0] & 1))
    throw FormatError("bitmap has reserved bit 0 set");
  b.finalize(mode);
  return b;
}

}  // namespace fmalign
