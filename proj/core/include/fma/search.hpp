#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fma/index.hpp"
#include "fma/strset.hpp"

namespace fmalign {

// One executed backward-search step: entry range + candidate string set
// after processing pattern position ppos (1-based, right to left).
struct SearchStep {
  uint32_t ppos = 0;
  uint64_t first = 0, last = 0;
  StrSet z;
};

struct SearchState {
  uint64_t first = 1, last = 0;
  StrSet z;  // candidate strings; the final filter is already applied
  std::vector<SearchStep> trace;

  bool empty() const { return first > last || z.empty(); }
};

// Occurrence of a pattern: string id and 1-based, sentinel-inclusive
// start position in the original string.
struct Occurrence {
  uint32_t str = 0;
  uint32_t pos = 0;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

// An entry resolved to concrete coordinates via the LF walk to a sample.
struct ResolvedEntry {
  StrSet strs;
  uint32_t pos = 0;                   // transformed start column
  std::vector<Occurrence> originals;  // per member string, ascending id
};

// Counted-pair occurrences of sym among entries [1..i].
uint64_t occ(const Index& idx, uint8_t sym, uint64_t i);
// LF step of the pair (sym, i): C[sym] + occ(sym, i).
uint64_t lf(const Index& idx, uint8_t sym, uint64_t i);

// Walks unmarked entries via LF until a sample, then converts back.
ResolvedEntry resolve_entry(const Index& idx, uint64_t i);

// Backward search over the pattern (regular symbols only; sentinels are
// rejected, other out-of-alphabet characters give an empty state).
SearchState backward_search(const Index& idx, std::string_view pattern);

// Number of pattern occurrences across the collection.
uint64_t count(const Index& idx, std::string_view pattern);
// All occurrences, sorted by (string id, position), duplicate-free.
std::vector<Occurrence> locate(const Index& idx, std::string_view pattern);

// S^j[s..e], 1-based inclusive, sentinel-inclusive coordinates.
std::string extract(const Index& idx, uint32_t j, uint32_t s, uint32_t e);

}  // namespace fmalign
