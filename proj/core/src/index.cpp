#include "fma/index.hpp"

#include <algorithm>

namespace fmalign {

uint8_t Index::f_sym(uint32_t i) const {
  if (i == 0 || i > entry_count) throw ArgumentError("entry id out of range");
  // C[s] < i <= C[s+1]  <=>  F symbol of entry i is s
  auto it = std::upper_bound(C.begin(), C.end(), static_cast<uint64_t>(i) - 1);
  return static_cast<uint8_t>((it - C.begin()) - 1);
}

bool Index::has_pair(uint8_t sym, uint32_t i) const {
  return counted[sym].test(i) || bmark[sym].test(i);
}

uint8_t Index::sole_l_sym(uint32_t i) const {
  for (uint32_t s = 0; s < sigma(); ++s)
    if (has_pair(static_cast<uint8_t>(s), i)) return static_cast<uint8_t>(s);
  throw ModelError("entry has no preceding-symbol pair");
}

const LBranch* Index::branch_of(uint32_t i) const {
  auto it = std::lower_bound(branches.begin(), branches.end(), i,
                             [](const auto& b, uint32_t v) { return b.first < v; });
  if (it == branches.end() || it->first != i) return nullptr;
  return &it->second;
}

const SamplePayload& Index::payload_of(uint32_t i) const {
  if (!saa.marked.test(i)) throw ArgumentError("entry is not marked");
  return saa.payload[saa.marked.rank1(i) - 1];
}

uint32_t Index::to_original(uint32_t j, uint32_t q) const {
  if (j == 0 || j > m) throw ArgumentError("string id out of range");
  return gaps[j - 1].to_original(q);
}

uint32_t Index::to_transformed(uint32_t j, uint32_t p) const {
  if (j == 0 || j > m) throw ArgumentError("string id out of range");
  if (p == 0 || p > len[j - 1]) throw ArgumentError("position out of range");
  return gaps[j - 1].to_transformed(p);
}

Index make_index(const SAAIndex& saa, const TransformedAlignment& ta, uint32_t rate) {
  if (rate == 0) throw ArgumentError("sampling rate must be positive");
  const uint32_t n_entries = saa.count();

  Index idx;
  idx.alphabet = saa.alphabet;
  idx.m = saa.m;
  idx.n = saa.n;
  idx.rate = rate;
  idx.entry_count = n_entries;
  idx.C = saa.C;
  idx.counted = saa.counted;
  idx.bmark = saa.bmark;
  for (uint32_t i = 1; i <= n_entries; ++i) {
    const SaaEntry& e = saa.entries[i];
    if (e.l_count > 1)
      idx.branches.emplace_back(i, saa.branches[static_cast<size_t>(e.branch)]);
  }

  // Mark: regular columns, irregular entries, and the column-1 ($) entries.
  idx.saa.rate = rate;
  idx.saa.marked = Bitmap(n_entries);
  for (uint32_t i = 1; i <= n_entries; ++i) {
    const SaaEntry& e = saa.entries[i];
    if (e.pos % rate == 0 || e.pos == 1 || saa.irregular(i)) idx.saa.marked.set(i);
  }
  idx.saa.marked.finalize(RankMode::kBlocks);
  idx.saa.payload.reserve(idx.saa.marked.ones());
  for (uint32_t i = 1; i <= n_entries; ++i)
    if (idx.saa.marked.test(i))
      idx.saa.payload.push_back({saa.entries[i].strs, saa.entries[i].pos});

  // Inverse samples: per string, every rate-th original position mapped to
  // the nearest non-gap column at-or-after, plus the final column n.
  idx.isaa.samples.resize(saa.m);
  for (uint32_t j = 1; j <= saa.m; ++j) {
    auto& vec = idx.isaa.samples[j - 1];
    const GapTable& gt = ta.gaps[j - 1];
    auto add = [&](uint32_t q) {
      if (gt.is_gap(q)) {
        // Next non-gap column: the run containing q ends before n.
        auto it = std::upper_bound(gt.runs().begin(), gt.runs().end(), q,
                                   [](uint32_t v, const auto& run) { return v < run.first; });
        q = std::prev(it)->second + 1;
      }
      const uint32_t p = gt.to_original(q);
      const uint32_t entry = saa.entry_of[j - 1][p];
      if (vec.empty() || vec.back().first != q) vec.emplace_back(q, entry);
    };
    for (uint32_t q = rate; q <= saa.n; q += rate) add(q);
    add(saa.n);
  }

  idx.gaps = ta.gaps;
  idx.len.resize(saa.m);
  for (uint32_t j = 1; j <= saa.m; ++j) idx.len[j - 1] = ta.len(j);
  return idx;
}

Index build_index(SimilarStrings strs, Segmentation seg, uint32_t rate) {
  AlignmentModel model = segment(std::move(strs), std::move(seg));
  TransformedAlignment ta = transform(std::move(model));
  SAAIndex saa = build_saa(ta);
  return make_index(saa, ta, rate);
}

}  // namespace fmalign
