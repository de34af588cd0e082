#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fma/alignment.hpp"
#include "fma/bitvec.hpp"
#include "fma/saa.hpp"
#include "fma/strset.hpp"

namespace fmalign {

// Sample payload of a marked entry: member strings + transformed start
// column.  Per-string original positions are derived at report time via the
// gap tables.
struct SamplePayload {
  StrSet strs;
  uint32_t pos = 0;
};

// Marked-entry samples.  Marked = regular (pos % rate == 0), irregular
// (multi-symbol L or any B bit — exactly where strs changes across LF), and
// the column-1 entries (so resolve walks stop at the string start instead of
// wrapping cyclically).
struct SampledSAA {
  uint32_t rate = 0;
  Bitmap marked;
  std::vector<SamplePayload> payload;  // one per marked entry, entry order
};

// Per-string inverse samples: for each sampled original position, the entry
// of the suffix starting at the nearest non-gap column at-or-after the
// regular column.  The final column n is always present.
struct SampledISAA {
  // [j-1]: (column, entry), ascending by column.
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> samples;
};

// Self-contained compressed index: everything queries need, nothing else.
// The indexed strings themselves are not retained.
struct Index {
  Alphabet alphabet;
  uint32_t m = 0;
  uint32_t n = 0;          // transformed columns
  uint32_t rate = 0;       // sampling rate d
  uint32_t entry_count = 0;

  std::vector<uint64_t> C;              // size sigma+1, entry-indexed
  std::vector<Bitmap> counted;          // per symbol
  std::vector<Bitmap> bmark;            // per symbol
  // Preceding-symbol partitions of multi-symbol entries, ascending entry id.
  std::vector<std::pair<uint32_t, LBranch>> branches;

  SampledSAA saa;
  SampledISAA isaa;
  std::vector<GapTable> gaps;  // [j-1]
  std::vector<uint32_t> len;   // [j-1], sentinel-inclusive lengths

  // --- small helpers shared by the query operations ---
  uint32_t sigma() const { return alphabet.size(); }
  // F symbol of entry i (the bucket of C containing i).
  uint8_t f_sym(uint32_t i) const;
  // True iff the pair (sym, i) exists, i.e. sym occurs in L of entry i.
  bool has_pair(uint8_t sym, uint32_t i) const;
  // The only preceding symbol of an entry known to have a single-symbol L.
  uint8_t sole_l_sym(uint32_t i) const;
  // Branch partition of entry i, or nullptr if i has a single-symbol L.
  const LBranch* branch_of(uint32_t i) const;
  // Payload of a marked entry.
  const SamplePayload& payload_of(uint32_t i) const;
  uint32_t to_original(uint32_t j, uint32_t q) const;
  uint32_t to_transformed(uint32_t j, uint32_t p) const;
};

// Selects marked entries and inverse samples at rate d (>= 1).
Index make_index(const SAAIndex& saa, const TransformedAlignment& ta, uint32_t rate);

// Convenience pipeline: segment -> transform -> collapse -> sample.
Index build_index(SimilarStrings strs, Segmentation seg, uint32_t rate);

}  // namespace fmalign
