#include "fma/saa.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>

namespace fmalign {

const SaaEntry& SAAIndex::at(uint32_t i) const {
  if (i == 0 || i >= entries.size()) throw ArgumentError("entry id out of range");
  return entries[i];
}

std::vector<std::pair<uint8_t, StrSet>> SAAIndex::l_of(uint32_t i) const {
  const SaaEntry& e = at(i);
  if (e.l_count == 1) return {{e.l_sym, e.strs}};
  return branches[static_cast<size_t>(e.branch)].parts;
}

bool SAAIndex::irregular(uint32_t i) const {
  const SaaEntry& e = at(i);
  if (e.l_count > 1) return true;
  for (const auto& bm : bmark)
    if (bm.test(i)) return true;
  return false;
}

std::vector<ASuffix> enumerate_asuffixes(const TransformedAlignment& ta) {
  std::vector<ASuffix> out;
  const uint32_t m = ta.m();
  for (uint32_t q = 1; q <= ta.n; ++q) {
    const Region& rg = ta.region_at(q);
    if (!rg.variant) {
      // Common column: every string participates, one a-suffix.
      out.push_back({q, StrSet::all(m), {}});
    } else {
      // Variant column: group non-gap strings by in-region suffix content.
      const uint32_t len = rg.end - q + 1;
      std::map<std::string, StrSet> groups;
      for (uint32_t j = 1; j <= m; ++j) {
        if (ta.is_gap(j, q)) continue;
        const uint32_t p = ta.to_original(j, q);
        std::string delta = ta.str(j).substr(p - 1, len);
        auto it = groups.find(delta);
        if (it == groups.end()) it = groups.emplace(std::move(delta), StrSet(m)).first;
        it->second.add(j);
      }
      for (const auto& [delta, set] : groups) out.push_back({q, set, delta});
    }
  }
  return out;
}

namespace {

// Open-entry accumulator used by the collapse scan.
struct OpenEntry {
  uint32_t rep_j = 0, rep_p = 0;                      // first member
  std::vector<std::pair<uint8_t, uint32_t>> members;  // (preceding symbol, j)
};

}  // namespace

SAAIndex build_saa(const TransformedAlignment& ta) {
  const uint32_t m = ta.m();
  const Alphabet& alpha = ta.model.strs.alphabet;
  const uint32_t sigma = alpha.size();

  SAAIndex out;
  out.alphabet = alpha;
  out.m = m;
  out.n = ta.n;

  std::shared_ptr<const Gsa> own;
  const Gsa* gsa = ta.model.gsa.get();
  if (!gsa) {
    own = std::make_shared<Gsa>(Gsa::build(ta.model.strs));
    gsa = own.get();
  }

  // Column of every suffix position, entry locator, and a flat column->region
  // map so the scan does O(1) lookups.
  std::vector<std::vector<uint32_t>> col_of(m);
  out.entry_of.resize(m);
  for (uint32_t j = 1; j <= m; ++j) {
    const uint32_t L = ta.len(j);
    out.suffix_count += L;
    col_of[j - 1].assign(L + 1, 0);
    out.entry_of[j - 1].assign(L + 1, 0);
    uint32_t p = 0, q = 1;
    for (auto [b, e] : ta.gaps[j - 1].runs()) {
      for (; q < b; ++q) col_of[j - 1][++p] = q;
      q = e + 1;
    }
    for (; q <= ta.n; ++q) col_of[j - 1][++p] = q;
    if (p != L) throw ModelError("transform column accounting mismatch");
  }
  std::vector<uint32_t> region_idx(ta.n + 1, 0);
  for (size_t ri = 0; ri < ta.regions.size(); ++ri)
    for (uint32_t q = ta.regions[ri].begin; q <= ta.regions[ri].end; ++q)
      region_idx[q] = static_cast<uint32_t>(ri);

  // ---- collapse scan over the generalized suffix array -------------------
  out.entries.emplace_back();  // entries[0] unused; ids are 1-based
  OpenEntry open;
  struct Rep {
    uint32_t j, p;
  };
  std::vector<uint8_t> cs_closed(ta.n + 1, 0);
  std::unordered_map<uint32_t, std::vector<Rep>> ps_closed;

  auto close_open = [&]() {
    if (open.members.empty()) return;
    SaaEntry& e = out.entries.back();
    std::sort(open.members.begin(), open.members.end());
    uint32_t distinct = 1;
    for (size_t k = 1; k < open.members.size(); ++k)
      if (open.members[k].first != open.members[k - 1].first) ++distinct;
    e.l_count = static_cast<uint16_t>(distinct);
    if (distinct == 1) {
      e.l_sym = open.members.front().first;
    } else {
      LBranch br;
      size_t k = 0;
      while (k < open.members.size()) {
        const uint8_t sym = open.members[k].first;
        StrSet set(m);
        for (; k < open.members.size() && open.members[k].first == sym; ++k)
          set.add(open.members[k].second);
        br.parts.emplace_back(sym, std::move(set));
      }
      e.branch = static_cast<int32_t>(out.branches.size());
      out.branches.push_back(std::move(br));
    }
    const Region& rg = ta.regions[region_idx[e.pos]];
    if (!rg.variant)
      cs_closed[e.pos] = 1;
    else
      ps_closed[e.pos].push_back({open.rep_j, open.rep_p});
    open.members.clear();
  };

  for (int32_t cpos : gsa->sa) {
    const uint32_t j = gsa->str_of[static_cast<size_t>(cpos)];
    const uint32_t p = gsa->pos_of[static_cast<size_t>(cpos)];
    const uint32_t q = col_of[j - 1][p];
    const Region& rg = ta.regions[region_idx[q]];

    bool fresh;
    if (out.entries.size() == 1) {
      fresh = true;
    } else {
      const SaaEntry& e = out.entries.back();
      if (e.pos != q) {
        fresh = true;
      } else if (!rg.variant) {
        fresh = false;
      } else {
        const uint32_t len = rg.end - q + 1;
        fresh = ta.str(j).compare(p - 1, len, ta.str(open.rep_j), open.rep_p - 1, len) != 0;
      }
    }

    if (fresh) {
      close_open();
      // The suffixes of an a-suffix block must be consecutive in suffix
      // order; meeting a closed block again means the input violates the
      // similar-strings model.
      if (!rg.variant) {
        if (cs_closed[q])
          throw ModelError("a-suffix block at column " + std::to_string(q) +
                           " is not consecutive in suffix order");
      } else {
        const uint32_t len = rg.end - q + 1;
        auto it = ps_closed.find(q);
        if (it != ps_closed.end())
          for (const Rep& r0 : it->second)
            if (ta.str(j).compare(p - 1, len, ta.str(r0.j), r0.p - 1, len) == 0)
              throw ModelError("a-suffix block at column " + std::to_string(q) +
                               " is not consecutive in suffix order");
      }
      SaaEntry e;
      e.pos = q;
      e.f_sym = static_cast<uint8_t>(alpha.id(ta.str(j)[p - 1]));
      e.strs = StrSet(m);
      out.entries.push_back(std::move(e));
      open.rep_j = j;
      open.rep_p = p;
    }

    SaaEntry& e = out.entries.back();
    if (e.f_sym != static_cast<uint8_t>(alpha.id(ta.str(j)[p - 1])))
      throw ModelError("entry first-symbol mismatch");
    e.strs.add(j);
    out.entry_of[j - 1][p] = static_cast<uint32_t>(out.entries.size()) - 1;
    const char lc = (p == 1) ? Alphabet::kEnd : ta.str(j)[p - 2];
    open.members.emplace_back(static_cast<uint8_t>(alpha.id(lc)), j);
  }
  close_open();

  const uint32_t n_entries = out.count();

  // ---- C from F counts ----------------------------------------------------
  out.C.assign(sigma + 1, 0);
  for (uint32_t i = 1; i <= n_entries; ++i) out.C[out.entries[i].f_sym + 1] += 1;
  for (uint32_t s = 1; s <= sigma; ++s) out.C[s] += out.C[s - 1];

  // ---- LF pair classification ---------------------------------------------
  // Target of a pair (s, i) computed definitionally from the members; all
  // members of a class must agree (LF is constant per class).
  out.counted.reserve(sigma);
  out.bmark.reserve(sigma);
  for (uint32_t s = 0; s < sigma; ++s) {
    out.counted.emplace_back(n_entries);
    out.bmark.emplace_back(n_entries);
  }
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> pairs(sigma);  // (target, entry)
  for (uint32_t i = 1; i <= n_entries; ++i) {
    const SaaEntry& e = out.entries[i];
    auto classify = [&](uint8_t sym, const StrSet& set) {
      uint32_t target = 0;
      set.for_each([&](uint32_t j) {
        const uint32_t p = ta.to_original(j, e.pos);
        const uint32_t pp = (p == 1) ? ta.len(j) : p - 1;
        const uint32_t t = out.entry_of[j - 1][pp];
        if (target == 0)
          target = t;
        else if (target != t)
          throw ModelError("LF mapping is not constant on an entry symbol class");
      });
      pairs[sym].emplace_back(target, i);
    };
    if (e.l_count == 1) {
      classify(e.l_sym, e.strs);
    } else {
      for (const auto& [sym, set] : out.branches[static_cast<size_t>(e.branch)].parts)
        classify(sym, set);
    }
  }
  for (uint32_t s = 0; s < sigma; ++s) {
    auto& v = pairs[s];
    std::sort(v.begin(), v.end());
    size_t k = 0;
    while (k < v.size()) {
      size_t k2 = k;
      while (k2 < v.size() && v[k2].first == v[k].first) ++k2;
      out.counted[s].set(v[k].second);  // smallest entry of the group
      if (k2 - k > 1)
        for (size_t t = k; t < k2; ++t) out.bmark[s].set(v[t].second);
      k = k2;
    }
    out.counted[s].finalize(RankMode::kBlocks);
    out.bmark[s].finalize(RankMode::kBlocks);
  }
  return out;
}

}  // namespace fmalign
