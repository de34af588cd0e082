#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fma/alignment.hpp"
#include "fma/bitvec.hpp"
#include "fma/strset.hpp"

namespace fmalign {

// One collapsed entry of the suffix array of the alignment: the set of
// per-string suffixes starting at transformed column pos that share the same
// text.  F is the (single) first symbol; L is the partition of the member
// strings by preceding symbol — stored inline when it has one class, in
// SAAIndex::branches otherwise.
struct SaaEntry {
  uint32_t pos = 0;
  uint8_t f_sym = 0;
  StrSet strs;
  uint16_t l_count = 0;  // number of distinct preceding symbols
  uint8_t l_sym = 0;     // valid when l_count == 1
  int32_t branch = -1;   // index into SAAIndex::branches when l_count > 1
};

// Preceding-symbol partition of a multi-symbol entry, sorted by symbol id.
struct LBranch {
  std::vector<std::pair<uint8_t, StrSet>> parts;
};

// Flat view of one a-suffix for enumeration/tests: start column, members,
// and (for variant regions) the in-region suffix content identifying it.
struct ASuffix {
  uint32_t pos = 0;
  StrSet strs;
  std::string delta;
};

// Build-side collapsed index: full entry table plus the LF classification
// (counted/B bit arrays) and a per-suffix entry locator.
struct SAAIndex {
  Alphabet alphabet;
  uint32_t m = 0;
  uint32_t n = 0;
  uint64_t suffix_count = 0;  // sum of |S^j|

  std::vector<SaaEntry> entries;  // entries[i] is entry i; entries[0] unused
  std::vector<LBranch> branches;
  std::vector<uint64_t> C;        // C[s] = entries with F-symbol < s; size sigma+1
  std::vector<Bitmap> counted;    // per symbol: (s,i) pairs contributing to occ
  std::vector<Bitmap> bmark;      // per symbol: B_s — (m:1)-type pairs

  // entry_of[j-1][p] = entry containing suffix (j, p); build-side only.
  std::vector<std::vector<uint32_t>> entry_of;

  uint32_t count() const { return static_cast<uint32_t>(entries.size()) - 1; }
  const SaaEntry& at(uint32_t i) const;
  // Materialized L partition of entry i, sorted by symbol id.
  std::vector<std::pair<uint8_t, StrSet>> l_of(uint32_t i) const;
  // True when entry i is irregular: multi-symbol L or any B bit set.
  bool irregular(uint32_t i) const;
};

// Lists all a-suffixes column by column: one per common column, one per
// distinct in-region suffix content per variant column (content order).
std::vector<ASuffix> enumerate_asuffixes(const TransformedAlignment& ta);

// Collapses the generalized suffix array into the entry table, computes L/F,
// and classifies LF pairs.  Throws ModelError if equal a-suffix blocks are
// not consecutive in suffix order (the collection violates the model).
SAAIndex build_saa(const TransformedAlignment& ta);

}  // namespace fmalign
