#include "fma/search.hpp"

#include <algorithm>

namespace fmalign {

uint64_t occ(const Index& idx, uint8_t sym, uint64_t i) {
  if (sym >= idx.sigma()) throw ArgumentError("symbol id out of range");
  return idx.counted[sym].rank1(i);
}

uint64_t lf(const Index& idx, uint8_t sym, uint64_t i) {
  return idx.C[sym] + occ(idx, sym, i);
}

// Preceding symbol to follow from entry i on string j's chain.
static uint8_t step_sym(const Index& idx, uint64_t i, uint32_t j) {
  if (const LBranch* br = idx.branch_of(static_cast<uint32_t>(i))) {
    for (const auto& [sym, set] : br->parts)
      if (set.contains(j)) return sym;
    throw ModelError("string missing from branch partition");
  }
  return idx.sole_l_sym(static_cast<uint32_t>(i));
}

ResolvedEntry resolve_entry(const Index& idx, uint64_t i) {
  if (i == 0 || i > idx.entry_count) throw ArgumentError("entry id out of range");
  uint64_t cur = i;
  uint32_t steps = 0;
  while (!idx.saa.marked.test(cur)) {
    // Unmarked entries have a single-symbol L whose one pair is counted.
    cur = lf(idx, idx.sole_l_sym(static_cast<uint32_t>(cur)), cur);
    if (++steps > idx.n) throw ModelError("resolve walk did not reach a sample");
  }
  const SamplePayload& pl = idx.payload_of(static_cast<uint32_t>(cur));
  ResolvedEntry res;
  res.strs = pl.strs;
  res.originals.reserve(pl.strs.count());
  pl.strs.for_each([&](uint32_t j) {
    res.originals.push_back({j, idx.to_original(j, pl.pos) + steps});
  });
  res.pos = idx.to_transformed(res.originals.front().str, res.originals.front().pos);
  return res;
}

SearchState backward_search(const Index& idx, std::string_view pattern) {
  if (pattern.empty()) throw ArgumentError("pattern must be non-empty");
  for (char c : pattern)
    if (Alphabet::is_sentinel(c))
      throw ArgumentError("pattern must not contain sentinel symbols");

  SearchState st;
  st.z = StrSet::all(idx.m);
  const uint32_t plen = static_cast<uint32_t>(pattern.size());
  auto push = [&](uint32_t ppos) { st.trace.push_back({ppos, st.first, st.last, st.z}); };

  const int sym0 = idx.alphabet.id(pattern[plen - 1]);
  if (sym0 < 0) {  // outside the alphabet: no occurrences, not an error
    st.first = 1;
    st.last = 0;
    st.z = StrSet(idx.m);
    push(plen);
    return st;
  }
  st.first = idx.C[static_cast<size_t>(sym0)] + 1;
  st.last = idx.C[static_cast<size_t>(sym0) + 1];
  push(plen);

  for (uint32_t l = plen - 1; l >= 1 && st.first <= st.last && !st.z.empty(); --l) {
    const int sym = idx.alphabet.id(pattern[l - 1]);
    if (sym < 0) {
      st.first = 1;
      st.last = 0;
      push(l);
      break;
    }
    const uint8_t s = static_cast<uint8_t>(sym);
    const uint64_t pf = st.first, pl = st.last;
    st.first = idx.C[s] + occ(idx, s, pf - 1) + 1;
    st.last = idx.C[s] + occ(idx, s, pl);
    if (st.first >= st.last) {
      // The range collapsed (or emptied): strings can still continue through
      // uncounted (m:1) pairs, which live at B-marked — hence sampled —
      // entries of the previous range.  Gather them and keep the single
      // surviving target entry.
      StrSet zm(idx.m);
      const Bitmap& bm = idx.bmark[s];
      const uint64_t before = bm.rank1(pf - 1), upto = bm.rank1(pl);
      for (uint64_t t = before + 1; t <= upto; ++t)
        zm |= idx.payload_of(static_cast<uint32_t>(bm.select1(t))).strs;
      if (!zm.empty()) {
        st.first = st.last;
        st.z &= zm;
      }
    }
    push(l);
  }

  // Deferred member filter: a single-entry range no longer tells which
  // strings carry the full pattern; its member set does.
  if (st.first > st.last)
    st.z = StrSet(idx.m);
  else if (st.first == st.last)
    st.z &= resolve_entry(idx, st.first).strs;
  if (!st.trace.empty()) st.trace.back().z = st.z;
  return st;
}

std::vector<Occurrence> locate(const Index& idx, std::string_view pattern) {
  SearchState st = backward_search(idx, pattern);
  std::vector<Occurrence> out;
  if (st.empty()) return out;
  for (uint64_t i = st.first; i <= st.last; ++i) {
    ResolvedEntry res = resolve_entry(idx, i);
    for (const Occurrence& o : res.originals)
      if (st.z.contains(o.str)) out.push_back(o);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

uint64_t count(const Index& idx, std::string_view pattern) {
  return locate(idx, pattern).size();
}

std::string extract(const Index& idx, uint32_t j, uint32_t s, uint32_t e) {
  if (j == 0 || j > idx.m) throw ArgumentError("string id out of range");
  if (s == 0 || s > e || e > idx.len[j - 1])
    throw ArgumentError("extract range out of bounds");

  // Nearest inverse sample at-or-after the end position.
  const uint32_t qe = idx.to_transformed(j, e);
  const auto& samples = idx.isaa.samples[j - 1];
  auto it = std::lower_bound(samples.begin(), samples.end(), qe,
                             [](const auto& sm, uint32_t v) { return sm.first < v; });
  if (it == samples.end()) throw ModelError("missing inverse sample");
  uint64_t cur = it->second;
  uint32_t p = idx.to_original(j, it->first);

  std::string out;
  out.reserve(e - s + 1);
  while (true) {
    if (p <= e) out.push_back(idx.alphabet.at(idx.f_sym(static_cast<uint32_t>(cur))));
    if (p == s) break;
    cur = lf(idx, step_sym(idx, cur, j), cur);
    --p;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace fmalign
