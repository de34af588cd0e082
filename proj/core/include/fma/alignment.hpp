#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fma/alphabet.hpp"
#include "fma/common.hpp"

namespace fmalign {

// A collection of similar strings.  Strings are stored sentinel-inclusive:
// every S^j is "$" + content + "#", and positions are 1-based over that form.
struct SimilarStrings {
  std::vector<std::string> strings;
  Alphabet alphabet;

  // Wraps sentinel-free texts.  The alphabet is collected from the texts
  // unless one is supplied (texts must then stay within it).
  static SimilarStrings from_raw(std::vector<std::string> raw);
  static SimilarStrings from_raw(std::vector<std::string> raw, Alphabet alphabet);

  uint32_t m() const { return static_cast<uint32_t>(strings.size()); }
  uint32_t len(uint32_t j) const;                  // |S^j|, sentinels included
  const std::string& str(uint32_t j) const;        // j is 1-based
};

// Raw segmentation of the collection: r+1 common regions interleaved with r
// per-string variant texts, all sentinel-free.
//   S^j = common[0] variant[j][0] common[1] ... variant[j][r-1] common[r]
struct Segmentation {
  std::vector<std::string> common;
  std::vector<std::vector<std::string>> variant;

  uint32_t r() const { return static_cast<uint32_t>(common.size()) - 1; }
};

// Generalized suffix array over the collection: one suffix per string
// position (sentinels included), ordered by suffix text under the alphabet
// order; equal texts tie-break by string id.  Backs the anchor-uniqueness
// probes and the collapsed build.
struct Gsa {
  std::vector<int32_t> concat;       // rank-remapped concatenation + terminator
  std::vector<int32_t> sa;           // suffix starts, terminator dropped
  std::vector<uint32_t> str_of;      // concat position -> string id (1-based)
  std::vector<uint32_t> pos_of;      // concat position -> in-string position

  static Gsa build(const SimilarStrings& strs);

  // Half-open [lo, hi) range of suffixes starting with pat.  pat must not
  // contain '#'; characters outside the alphabet yield an empty range.
  std::pair<size_t, size_t> find_range(const SimilarStrings& strs,
                                       std::string_view pat) const;
  // True iff pat occurs exactly once in every string of the collection.
  bool occurs_once_per_string(const SimilarStrings& strs, std::string_view pat) const;

 private:
  int compare_suffix(size_t pos, const std::vector<int32_t>& pat_ranks) const;
};

// Reference implementation of the same predicate by direct scanning.
bool naive_occurs_once_per_string(const SimilarStrings& strs, std::string_view pat);

// Segmented collection with anchors resolved:
//   common[i]  sentinel-inclusive common regions (front has '$', back '#')
//   anchor[i]  shortest proper suffix of common[i] occurring exactly once in
//              every string; empty for the last region
//   head[i]    common[i] minus anchor[i]
// Regions whose anchor would have to be the whole region are merged into the
// neighboring variants before the model is returned.
struct AlignmentModel {
  SimilarStrings strs;
  std::vector<std::string> common;
  std::vector<std::string> anchor;
  std::vector<std::string> head;
  std::vector<std::vector<std::string>> variant;  // [j-1][i], sentinel-free
  std::shared_ptr<const Gsa> gsa;                 // shared with the collapse step

  uint32_t r() const { return static_cast<uint32_t>(common.size()) - 1; }
};

// Validates the segmentation against the strings and computes anchors,
// merging regions to the fixed point.  Throws ModelError when the input does
// not fit the model (reconstruction mismatch, empty middle region, leading
// region without a proper unique-suffix anchor).
AlignmentModel segment(SimilarStrings strs, Segmentation seg);

// One column interval of the transformed alignment.
//   variant == false: gap-free common content (head of a common region)
//   variant == true : right-justified anchor+variant content; rows shorter
//                     than the region width lead with gap columns
struct Region {
  bool variant = false;
  uint32_t index = 0;  // common-region / variant-slot index (0-based)
  uint32_t begin = 0, end = 0;  // inclusive 1-based columns
};

// Per-string gap columns as sorted disjoint runs, with prefix counts for
// O(log) coordinate mapping in both directions.
class GapTable {
 public:
  GapTable() = default;
  explicit GapTable(std::vector<std::pair<uint32_t, uint32_t>> runs);

  bool is_gap(uint32_t q) const;
  // Number of gap columns in [1..q].
  uint32_t gaps_through(uint32_t q) const;
  uint32_t total_gaps() const { return cum_.empty() ? 0 : cum_.back(); }
  const std::vector<std::pair<uint32_t, uint32_t>>& runs() const { return runs_; }

  // Original position of non-gap column q (non-gap count through q).
  uint32_t to_original(uint32_t q) const { return q - gaps_through(q); }
  // Column holding original position p (smallest non-gap q with that count).
  uint32_t to_transformed(uint32_t p) const;

 private:
  std::vector<std::pair<uint32_t, uint32_t>> runs_;  // inclusive [b,e]
  std::vector<uint32_t> cum_;  // cum_[i] = gap columns in runs_[0..i)
};

// The transformed alignment: common content gap-free, variant regions
// right-justified.  Column coordinates q are 1-based and shared by all
// strings; per-string gap tables map between q and original positions.
struct TransformedAlignment {
  AlignmentModel model;
  std::vector<Region> regions;
  std::vector<GapTable> gaps;  // [j-1]
  uint32_t n = 0;              // number of columns

  uint32_t m() const { return model.strs.m(); }
  const std::string& str(uint32_t j) const { return model.strs.str(j); }
  uint32_t len(uint32_t j) const { return model.strs.len(j); }

  const Region& region_at(uint32_t q) const;
  bool is_gap(uint32_t j, uint32_t q) const;
  uint32_t to_original(uint32_t j, uint32_t q) const;
  uint32_t to_transformed(uint32_t j, uint32_t p) const;
  // Character of string j at non-gap column q.
  char at(uint32_t j, uint32_t q) const;
};

TransformedAlignment transform(AlignmentModel model);

}  // namespace fmalign
