#pragma once

// Shared worked example: four similar strings over {a,c,t} with two variant
// slots, plus the frozen expected state of the collapsed index built from
// them.  Expected values were produced by independent reference
// implementations and are asserted verbatim.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fma/alignment.hpp"
#include "fma/strset.hpp"

namespace fixture {

inline fmalign::SimilarStrings four_strings() {
  return fmalign::SimilarStrings::from_raw(
      {"cctcaaacc", "cctccaaaca", "ccttataac", "cctaacc"});
}

inline fmalign::Segmentation four_segmentation() {
  fmalign::Segmentation seg;
  seg.common = {"cct", "aac", ""};
  seg.variant = {{"ca", "c"}, {"cca", "a"}, {"tat", ""}, {"", "c"}};
  return seg;
}

struct GoldenEntry {
  std::vector<uint32_t> strs;  // empty = all four strings
  uint32_t pos;                // transformed start column
  char f;                      // first symbol
  // preceding-symbol partition, ascending by symbol; empty members = all
  std::vector<std::pair<char, std::vector<uint32_t>>> l;
};

inline const std::vector<GoldenEntry>& golden_entries() {
  static const std::vector<GoldenEntry> g = {
      {{}, 1, '$', {{'#', {}}}},
      {{}, 12, '#', {{'a', {2}}, {'c', {1, 3, 4}}}},
      {{2}, 11, 'a', {{'c', {2}}}},
      {{1, 2}, 7, 'a', {{'c', {1, 2}}}},
      {{}, 8, 'a', {{'a', {1, 2}}, {'t', {3, 4}}}},
      {{3}, 10, 'a', {{'a', {3}}}},
      {{2}, 9, 'a', {{'a', {2}}}},
      {{1, 4}, 9, 'a', {{'a', {1, 4}}}},
      {{3}, 6, 'a', {{'t', {3}}}},
      {{1, 3, 4}, 11, 'c', {{'a', {3}}, {'c', {1, 4}}}},
      {{2}, 10, 'c', {{'a', {2}}}},
      {{1, 2}, 6, 'c', {{'c', {2}}, {'t', {1}}}},
      {{1, 4}, 10, 'c', {{'a', {1, 4}}}},
      {{2}, 5, 'c', {{'t', {2}}}},
      {{}, 2, 'c', {{'$', {}}}},
      {{4}, 6, 'c', {{'c', {4}}}},
      {{1}, 4, 'c', {{'c', {1}}}},
      {{2}, 3, 'c', {{'c', {2}}}},
      {{3}, 3, 'c', {{'c', {3}}}},
      {{3, 4}, 7, 't', {{'a', {3}}, {'c', {4}}}},
      {{3}, 5, 't', {{'t', {3}}}},
      {{1}, 5, 't', {{'c', {1}}}},
      {{2}, 4, 't', {{'c', {2}}}},
      {{3}, 4, 't', {{'c', {3}}}},
  };
  return g;
}

// Entries whose (symbol, entry) pair contributes to occ, per symbol.
inline const std::vector<std::pair<char, std::vector<uint32_t>>>& golden_counted() {
  static const std::vector<std::pair<char, std::vector<uint32_t>>> g = {
      {'$', {15}},
      {'#', {1}},
      {'a', {2, 5, 6, 10, 11, 13, 20}},
      {'c', {2, 3, 4, 10, 12, 16, 20, 22, 23, 24}},
      {'t', {5, 9, 12, 14, 21}},
  };
  return g;
}

// Entries belonging to a many-to-one LF group, per symbol.
inline const std::vector<std::pair<char, std::vector<uint32_t>>>& golden_bmark() {
  static const std::vector<std::pair<char, std::vector<uint32_t>>> g = {
      {'a', {6, 7, 8}},
      {'c', {16, 17, 18, 19}},
  };
  return g;
}

inline const std::vector<uint64_t>& golden_c_table() {
  static const std::vector<uint64_t> g = {0, 1, 2, 9, 19, 24};
  return g;
}

// occ(sym, i) for i = 1..24, regular symbols only.
inline const std::vector<std::pair<char, std::vector<uint64_t>>>& golden_occ() {
  static const std::vector<std::pair<char, std::vector<uint64_t>>> g = {
      {'a', {0, 1, 1, 1, 2, 3, 3, 3, 3, 4, 5, 5, 6, 6, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7}},
      {'c', {0, 1, 2, 3, 3, 3, 3, 3, 3, 4, 4, 5, 5, 5, 5, 6, 6, 6, 6, 7, 7, 8, 9, 10}},
      {'t', {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 3, 3, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5}},
  };
  return g;
}

inline fmalign::StrSet to_set(uint32_t m, const std::vector<uint32_t>& ids) {
  if (ids.empty()) return fmalign::StrSet::all(m);
  fmalign::StrSet s(m);
  for (uint32_t j : ids) s.add(j);
  return s;
}

}  // namespace fixture
