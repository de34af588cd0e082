#pragma once

#include <cstdint>
#include <vector>

namespace fmalign {

// Suffix array over an integer sequence.  Requirements: values in [0, k),
// the last value is 0 and 0 occurs nowhere else (unique smallest terminator).
// Returns start positions of all n suffixes in lexicographic order (the
// terminator suffix sorts first).  O(n log n): rank doubling with counting
// sort passes.
std::vector<int32_t> build_suffix_array(const std::vector<int32_t>& s, int32_t k);

}  // namespace fmalign
