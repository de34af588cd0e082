#include "fma/suffix_array.hpp"

#include <algorithm>

#include "fma/common.hpp"

namespace fmalign {

// Prefix-doubling construction.  Each round sorts suffixes by their first
// 2^t symbols using two counting-sort passes (stable sort by second key,
// then by first key), then re-ranks.  Terminates once all ranks are unique,
// which the unique terminator guarantees within ceil(log2 n) rounds.
std::vector<int32_t> build_suffix_array(const std::vector<int32_t>& s, int32_t k) {
  const int32_t n = static_cast<int32_t>(s.size());
  if (n == 0) return {};
  if (s.back() != 0) throw ArgumentError("sequence must end with terminator 0");
  for (int32_t i = 0; i + 1 < n; ++i)
    if (s[i] <= 0 || s[i] >= k) throw ArgumentError("sequence value out of range");

  std::vector<int32_t> sa(n), rank(n), tmp(n), cnt;
  // Round 0: sort by single symbol.
  cnt.assign(std::max(k, n) + 1, 0);
  for (int32_t i = 0; i < n; ++i) ++cnt[s[i]];
  for (size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
  for (int32_t i = n - 1; i >= 0; --i) sa[--cnt[s[i]]] = i;
  rank[sa[0]] = 0;
  for (int32_t i = 1; i < n; ++i)
    rank[sa[i]] = rank[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);

  for (int32_t len = 1; rank[sa[n - 1]] != n - 1; len *= 2) {
    // Stable arrangement by second key (rank at i+len, -1 when past the end):
    // suffixes with i >= n-len have no second key and come first, in order;
    // the rest are appended in the order of the previous sa shifted by len.
    int32_t p = 0;
    for (int32_t i = n - len; i < n; ++i) tmp[p++] = i;
    for (int32_t i = 0; i < n; ++i)
      if (sa[i] >= len) tmp[p++] = sa[i] - len;
    // Counting sort by first key (current rank), stable.
    cnt.assign(n + 1, 0);
    for (int32_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
    for (int32_t c = 1; c <= n; ++c) cnt[c] += cnt[c - 1];
    for (int32_t i = 0; i < n; ++i) sa[cnt[rank[tmp[i]]]++] = tmp[i];
    // Re-rank.  With a unique terminator, equal ranks imply both suffixes
    // extend past i+len, so the bounds checks only ever confirm inequality.
    std::vector<int32_t>& next = tmp;
    next[sa[0]] = 0;
    for (int32_t i = 1; i < n; ++i) {
      int32_t a = sa[i - 1], b = sa[i];
      bool same = rank[a] == rank[b] && a + len < n && b + len < n &&
                  rank[a + len] == rank[b + len];
      next[sa[i]] = next[sa[i - 1]] + (same ? 0 : 1);
    }
    std::swap(rank, next);  // tmp now holds stale ranks; overwritten next round
  }
  return sa;
}

}  // namespace fmalign
