#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fma/alignment.hpp"
#include "fma/index.hpp"

namespace fmalign {

// Parsed alignment exchange text: declared alphabet, sentinel-free
// segmentation, and the reassembled strings.
struct ParsedAlignment {
  Alphabet alphabet;
  Segmentation seg;
  std::vector<std::string> raw;  // one sentinel-free string per row
};

// Strict line format (no blank lines, single spaces):
//   #FMA-ALIGN 1
//   ALPHABET <symbols>
//   R <r>
//   A <text|.>          r+1 lines, in order
//   M <m>
//   D <j> <i> <text|.>  one line per (row j, slot i), any order, complete
ParsedAlignment parse_alignment(std::istream& in);
ParsedAlignment parse_alignment_file(const std::string& path);

struct Variant {
  uint32_t pos = 0;  // 1-based reference position of the first REF symbol
  std::string ref;   // nonempty; must match the reference at pos
  std::string alt;   // replacement content; empty = pure deletion
};
using VariantSet = std::vector<Variant>;

// One "POS<TAB>REF<TAB>ALT" line per variant ('.' = empty ALT); blank lines
// are ignored.  Ordering/overlap/REF checks happen in from_variants.
VariantSet parse_variants(std::istream& in);
VariantSet parse_variants_file(const std::string& path);

// Derives the collection and its segmentation from a reference string and
// per-sample variant sets: variant reference intervals are united across all
// samples (overlapping or adjacent intervals merge into one region); inside
// a region each sample applies its own variants and takes reference content
// elsewhere.  Rejects unsorted or same-sample-overlapping variants, REF
// mismatches, and out-of-bounds spans.
std::pair<SimilarStrings, Segmentation> from_variants(
    const std::string& reference, const std::vector<VariantSet>& samples);

// ---- binary index image ----------------------------------------------

// Layout: "FMAG" magic, u32 version, u32 CRC-32 of the payload, three u64
// section lengths (core, gap, sampling), then the three sections.  All
// integers little-endian fixed width; bit arrays as raw words behind a
// bit-count header.
void save_index(const Index& idx, std::ostream& out);
void save_index_file(const Index& idx, const std::string& path);
Index load_index(std::istream& in);
Index load_index_file(const std::string& path);

struct IndexStats {
  uint64_t entries = 0;
  uint32_t m = 0, n = 0, rate = 0;
  uint64_t core_bytes = 0;      // image header + counts + counted/B bit arrays
  uint64_t gap_bytes = 0;       // per-string gap run tables
  uint64_t sampling_bytes = 0;  // marks, payloads, branch partitions, inverse samples
  uint64_t total_bytes = 0;
};
// Section sizes of the on-disk image (computed by a dry-run serialization).
IndexStats stats(const Index& idx);

}  // namespace fmalign
