#include "fma/alignment.hpp"

#include <algorithm>

#include "fma/suffix_array.hpp"

namespace fmalign {

// ---------------------------------------------------------------- strings

SimilarStrings SimilarStrings::from_raw(std::vector<std::string> raw) {
  for (const auto& t : raw)
    for (char c : t)
      if (Alphabet::is_sentinel(c))
        throw ModelError("string content contains a sentinel symbol");
  Alphabet a = Alphabet::from_texts(raw);
  return from_raw(std::move(raw), std::move(a));
}

SimilarStrings SimilarStrings::from_raw(std::vector<std::string> raw, Alphabet alphabet) {
  if (raw.empty()) throw ArgumentError("collection must contain at least one string");
  SimilarStrings s;
  s.alphabet = std::move(alphabet);
  s.strings.reserve(raw.size());
  for (auto& t : raw) {
    for (char c : t) {
      if (Alphabet::is_sentinel(c))
        throw ModelError("string content contains a sentinel symbol");
      if (s.alphabet.id(c) < 0) throw ModelError("string content outside the alphabet");
    }
    std::string with;
    with.reserve(t.size() + 2);
    with.push_back(Alphabet::kBegin);
    with += t;
    with.push_back(Alphabet::kEnd);
    s.strings.push_back(std::move(with));
  }
  return s;
}

uint32_t SimilarStrings::len(uint32_t j) const {
  return static_cast<uint32_t>(str(j).size());
}

const std::string& SimilarStrings::str(uint32_t j) const {
  if (j == 0 || j > strings.size()) throw ArgumentError("string id out of range");
  return strings[j - 1];
}

// -------------------------------------------------------------------- GSA

// Concatenation ranks: 0 global terminator, 1 '$' (shared), 1+j the '#' of
// string j (distinct per string so equal in-string texts tie-break by string
// id), regular symbol with alphabet id k -> m+k.  All '#' ranks sort between
// '$' and the regular symbols, preserving  $ < # < regular.
Gsa Gsa::build(const SimilarStrings& strs) {
  const uint32_t m = strs.m();
  size_t total = 0;
  for (const auto& s : strs.strings) total += s.size();

  Gsa g;
  g.concat.reserve(total + 1);
  g.str_of.reserve(total + 1);
  g.pos_of.reserve(total + 1);
  for (uint32_t j = 1; j <= m; ++j) {
    const std::string& s = strs.str(j);
    for (uint32_t p = 1; p <= s.size(); ++p) {
      char c = s[p - 1];
      int32_t rank;
      if (c == Alphabet::kBegin)
        rank = 1;
      else if (c == Alphabet::kEnd)
        rank = 1 + static_cast<int32_t>(j);
      else
        rank = static_cast<int32_t>(m) + strs.alphabet.id(c);
      g.concat.push_back(rank);
      g.str_of.push_back(j);
      g.pos_of.push_back(p);
    }
  }
  g.concat.push_back(0);
  g.str_of.push_back(0);
  g.pos_of.push_back(0);

  const int32_t sigma = static_cast<int32_t>(m + strs.alphabet.size());
  g.sa = build_suffix_array(g.concat, sigma);
  if (g.sa.empty() || g.sa.front() != static_cast<int32_t>(g.concat.size()) - 1)
    throw ModelError("suffix order construction failed");
  g.sa.erase(g.sa.begin());  // drop the global-terminator suffix
  return g;
}

// Compares the suffix at concat position pos with pat (as ranks); returns
// <0 / 0 / >0 with 0 meaning "suffix starts with pat".  Never reads past a
// string boundary meaningfully: '#' and terminator ranks differ from every
// probe rank, so the comparison resolves at the boundary.
int Gsa::compare_suffix(size_t pos, const std::vector<int32_t>& pat_ranks) const {
  for (size_t k = 0; k < pat_ranks.size(); ++k) {
    int32_t sc = concat[pos + k];
    if (sc != pat_ranks[k]) return sc < pat_ranks[k] ? -1 : 1;
  }
  return 0;
}

std::pair<size_t, size_t> Gsa::find_range(const SimilarStrings& strs,
                                          std::string_view pat) const {
  const uint32_t m = strs.m();
  std::vector<int32_t> ranks;
  ranks.reserve(pat.size());
  for (char c : pat) {
    if (c == Alphabet::kBegin) {
      ranks.push_back(1);
    } else if (c == Alphabet::kEnd) {
      throw ArgumentError("'#' cannot be used in an occurrence probe");
    } else {
      int id = strs.alphabet.id(c);
      if (id < 0) return {0, 0};
      ranks.push_back(static_cast<int32_t>(m) + id);
    }
  }
  auto lo = std::partition_point(sa.begin(), sa.end(), [&](int32_t p) {
    return compare_suffix(static_cast<size_t>(p), ranks) < 0;
  });
  auto hi = std::partition_point(lo, sa.end(), [&](int32_t p) {
    return compare_suffix(static_cast<size_t>(p), ranks) == 0;
  });
  return {static_cast<size_t>(lo - sa.begin()), static_cast<size_t>(hi - sa.begin())};
}

bool Gsa::occurs_once_per_string(const SimilarStrings& strs, std::string_view pat) const {
  auto [lo, hi] = find_range(strs, pat);
  const uint32_t m = strs.m();
  if (hi - lo != m) return false;
  std::vector<uint8_t> seen(m + 1, 0);
  for (size_t k = lo; k < hi; ++k) {
    uint32_t j = str_of[static_cast<size_t>(sa[k])];
    if (seen[j]) return false;
    seen[j] = 1;
  }
  return true;
}

bool naive_occurs_once_per_string(const SimilarStrings& strs, std::string_view pat) {
  if (pat.empty()) return false;
  for (const auto& s : strs.strings) {
    std::string_view sv(s);
    size_t hits = 0;
    for (size_t from = 0; (from = sv.find(pat, from)) != std::string_view::npos; ++from)
      if (++hits > 1) break;
    if (hits != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- segment

namespace {

// Shortest proper suffix of region occurring exactly once in every string;
// empty when no proper suffix qualifies.
std::string shortest_unique_suffix(const std::string& region, const SimilarStrings& strs,
                                   const Gsa& gsa) {
  for (size_t len = 1; len < region.size(); ++len) {
    std::string_view cand = std::string_view(region).substr(region.size() - len);
    if (gsa.occurs_once_per_string(strs, cand)) return std::string(cand);
  }
  return {};
}

}  // namespace

AlignmentModel segment(SimilarStrings strs, Segmentation seg) {
  const uint32_t m = strs.m();
  if (seg.common.empty()) throw ArgumentError("segmentation needs at least one common region");
  if (seg.variant.size() != m)
    throw ArgumentError("segmentation row count does not match the collection");
  const uint32_t r0 = seg.r();
  for (const auto& row : seg.variant)
    if (row.size() != r0) throw ArgumentError("variant row length does not match region count");

  std::vector<std::string> common = seg.common;
  common.front().insert(common.front().begin(), Alphabet::kBegin);
  common.back().push_back(Alphabet::kEnd);
  std::vector<std::vector<std::string>> variant = seg.variant;

  for (size_t i = 1; i + 1 < common.size(); ++i)
    if (common[i].empty()) throw ModelError("empty middle common region");

  for (uint32_t j = 1; j <= m; ++j) {
    std::string rebuilt = common[0];
    for (size_t i = 0; i < variant[j - 1].size(); ++i) {
      rebuilt += variant[j - 1][i];
      rebuilt += common[i + 1];
    }
    if (rebuilt != strs.str(j))
      throw ModelError("segmentation does not reconstruct string " + std::to_string(j));
  }

  auto gsa = std::make_shared<Gsa>(Gsa::build(strs));

  // Anchor fixed point.  A middle region with no proper unique suffix cannot
  // anchor the variant block to its right and is merged into the flanking
  // variants.  Anchors depend only on (region text, strings), so surviving
  // regions keep their anchors and one merge round suffices; the loop re-runs
  // once to assert that.
  std::vector<std::string> anchor;
  for (int round = 0;; ++round) {
    anchor.assign(common.size(), {});
    for (size_t i = 0; i + 1 < common.size(); ++i)
      anchor[i] = shortest_unique_suffix(common[i], strs, *gsa);
    if (common.size() > 1 && anchor[0].empty())
      throw ModelError(
          "leading common region has no proper suffix occurring exactly once in "
          "every string");
    std::vector<size_t> merge;
    for (size_t i = 1; i + 1 < common.size(); ++i)
      if (anchor[i].empty()) merge.push_back(i);
    if (merge.empty()) break;
    if (round > 0) throw ModelError("region merging did not reach a fixed point");
    for (auto it = merge.rbegin(); it != merge.rend(); ++it) {
      size_t i = *it;
      for (uint32_t j = 1; j <= m; ++j) {
        auto& row = variant[j - 1];
        row[i - 1] = row[i - 1] + common[i] + row[i];
        row.erase(row.begin() + i);
      }
      common.erase(common.begin() + static_cast<ptrdiff_t>(i));
    }
  }

  AlignmentModel model;
  model.head.resize(common.size());
  for (size_t i = 0; i < common.size(); ++i)
    model.head[i] = common[i].substr(0, common[i].size() - anchor[i].size());
  model.anchor = std::move(anchor);
  model.common = std::move(common);
  model.variant = std::move(variant);
  model.strs = std::move(strs);
  model.gsa = std::move(gsa);
  return model;
}

// -------------------------------------------------------------- gap table

GapTable::GapTable(std::vector<std::pair<uint32_t, uint32_t>> runs) : runs_(std::move(runs)) {
  cum_.resize(runs_.size() + 1);
  cum_[0] = 0;
  for (size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].second < runs_[i].first || runs_[i].first == 0)
      throw ArgumentError("malformed gap run");
    if (i && runs_[i].first <= runs_[i - 1].second)
      throw ArgumentError("gap runs must be sorted and disjoint");
    cum_[i + 1] = cum_[i] + (runs_[i].second - runs_[i].first + 1);
  }
}

// Index of the last run starting at or before q; -1 if none.
static ptrdiff_t run_at_or_before(const std::vector<std::pair<uint32_t, uint32_t>>& runs,
                                  uint32_t q) {
  auto it = std::upper_bound(runs.begin(), runs.end(), q,
                             [](uint32_t v, const auto& run) { return v < run.first; });
  return static_cast<ptrdiff_t>(it - runs.begin()) - 1;
}

bool GapTable::is_gap(uint32_t q) const {
  ptrdiff_t i = run_at_or_before(runs_, q);
  return i >= 0 && q <= runs_[static_cast<size_t>(i)].second;
}

uint32_t GapTable::gaps_through(uint32_t q) const {
  ptrdiff_t i = run_at_or_before(runs_, q);
  if (i < 0) return 0;
  const auto& run = runs_[static_cast<size_t>(i)];
  return cum_[static_cast<size_t>(i)] + std::min(q, run.second) - run.first + 1;
}

uint32_t GapTable::to_transformed(uint32_t p) const {
  // First run whose preceding non-gap count reaches p; all gap runs before it
  // lie fully to the left of the answer column.
  size_t lo = 0, hi = runs_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    uint32_t nongap_before = runs_[mid].first - 1 - cum_[mid];
    if (nongap_before >= p)
      hi = mid;
    else
      lo = mid + 1;
  }
  return p + cum_[lo];
}

// -------------------------------------------------------------- transform

TransformedAlignment transform(AlignmentModel model) {
  TransformedAlignment ta;
  const uint32_t m = model.strs.m();
  const size_t nregions = model.common.size();
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> runs(m);

  uint32_t col = 1;
  for (size_t i = 0; i < nregions; ++i) {
    const std::string& head = model.head[i];
    if (!head.empty()) {
      ta.regions.push_back({false, static_cast<uint32_t>(i), col,
                            col + static_cast<uint32_t>(head.size()) - 1});
      col += static_cast<uint32_t>(head.size());
    }
    if (i + 1 < nregions) {
      const std::string& anc = model.anchor[i];
      size_t dmax = 0;
      for (uint32_t j = 0; j < m; ++j) dmax = std::max(dmax, model.variant[j][i].size());
      const uint32_t width = static_cast<uint32_t>(anc.size() + dmax);
      ta.regions.push_back({true, static_cast<uint32_t>(i), col, col + width - 1});
      for (uint32_t j = 0; j < m; ++j) {
        const uint32_t content = static_cast<uint32_t>(anc.size() + model.variant[j][i].size());
        if (content < width) runs[j].push_back({col, col + (width - content) - 1});
      }
      col += width;
    }
  }
  ta.n = col - 1;
  ta.gaps.reserve(m);
  for (uint32_t j = 0; j < m; ++j) ta.gaps.emplace_back(std::move(runs[j]));
  for (uint32_t j = 1; j <= m; ++j)
    if (ta.n - ta.gaps[j - 1].total_gaps() != model.strs.len(j))
      throw ModelError("transform width mismatch");
  ta.model = std::move(model);
  return ta;
}

const Region& TransformedAlignment::region_at(uint32_t q) const {
  if (q == 0 || q > n) throw ArgumentError("column out of range");
  auto it = std::upper_bound(regions.begin(), regions.end(), q,
                             [](uint32_t v, const Region& rg) { return v < rg.begin; });
  return *std::prev(it);
}

bool TransformedAlignment::is_gap(uint32_t j, uint32_t q) const {
  if (j == 0 || j > m()) throw ArgumentError("string id out of range");
  if (q == 0 || q > n) throw ArgumentError("column out of range");
  return gaps[j - 1].is_gap(q);
}

uint32_t TransformedAlignment::to_original(uint32_t j, uint32_t q) const {
  if (is_gap(j, q)) throw ArgumentError("column is a gap for this string");
  return gaps[j - 1].to_original(q);
}

uint32_t TransformedAlignment::to_transformed(uint32_t j, uint32_t p) const {
  if (j == 0 || j > m()) throw ArgumentError("string id out of range");
  if (p == 0 || p > len(j)) throw ArgumentError("position out of range");
  return gaps[j - 1].to_transformed(p);
}

char TransformedAlignment::at(uint32_t j, uint32_t q) const {
  return str(j)[to_original(j, q) - 1];
}

}  // namespace fmalign
