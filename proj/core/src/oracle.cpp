#include "fma/oracle.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

#include "fma/search.hpp"

namespace fmalign::oracle {

namespace {

int sym_rank(char c) {
  if (c == Alphabet::kBegin) return 0;
  if (c == Alphabet::kEnd) return 1;
  return 2 + static_cast<unsigned char>(c);
}

}  // namespace

std::vector<GsaEntry> naive_gsa(const SimilarStrings& strs) {
  std::vector<GsaEntry> out;
  for (uint32_t j = 1; j <= strs.m(); ++j)
    for (uint32_t p = 1; p <= strs.len(j); ++p) out.push_back({j, p});
  std::sort(out.begin(), out.end(), [&](const GsaEntry& a, const GsaEntry& b) {
    std::string_view sa = strs.str(a.str), sb = strs.str(b.str);
    size_t ia = a.pos - 1, ib = b.pos - 1;
    while (ia < sa.size() && ib < sb.size()) {
      const int ra = sym_rank(sa[ia]), rb = sym_rank(sb[ib]);
      if (ra != rb) return ra < rb;
      ++ia, ++ib;
    }
    if ((ia < sa.size()) != (ib < sb.size())) return ib < sb.size();
    return a.str < b.str;
  });
  return out;
}

std::vector<Occurrence> naive_locate(const SimilarStrings& strs, std::string_view pattern) {
  std::vector<Occurrence> out;
  if (pattern.empty()) return out;
  for (uint32_t j = 1; j <= strs.m(); ++j) {
    const std::string& s = strs.str(j);
    for (size_t at = s.find(pattern); at != std::string::npos;
         at = s.find(pattern, at + 1))
      out.push_back({j, static_cast<uint32_t>(at) + 1});
  }
  return out;
}

std::string naive_extract(const SimilarStrings& strs, uint32_t j, uint32_t s, uint32_t e) {
  if (j == 0 || j > strs.m() || s == 0 || s > e || e > strs.len(j))
    throw ArgumentError("extract range out of bounds");
  return strs.str(j).substr(s - 1, e - s + 1);
}

uint32_t brute_lf(const TransformedAlignment& ta, const SAAIndex& saa, uint8_t sym,
                  uint32_t i) {
  const SaaEntry& e = saa.at(i);
  uint32_t target = 0;
  e.strs.for_each([&](uint32_t j) {
    const uint32_t p = ta.to_original(j, e.pos);
    const char prev = (p == 1) ? Alphabet::kEnd : ta.str(j)[p - 2];
    if (saa.alphabet.id(prev) != static_cast<int>(sym)) return;
    const uint32_t pp = (p == 1) ? ta.len(j) : p - 1;
    const uint32_t t = saa.entry_of[j - 1][pp];
    if (target == 0)
      target = t;
    else if (target != t)
      throw ModelError("LF mapping is not constant on an entry symbol class");
  });
  return target;
}

std::string ValidationReport::to_string() const {
  std::string s;
  for (const auto& f : failures) {
    s += f;
    s += '\n';
  }
  return s;
}

namespace {

void run_checks(const TransformedAlignment& ta, const SAAIndex& saa, const Index& idx,
                ValidationReport& rep) {
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };
  const uint32_t m = ta.m();
  const uint32_t ne = saa.count();
  const uint32_t sigma = saa.alphabet.size();

  // ---- suffix conservation per column ----
  {
    std::vector<uint64_t> got(ta.n + 1, 0), want(ta.n + 1, 0);
    for (uint32_t i = 1; i <= ne; ++i) got[saa.entries[i].pos] += saa.entries[i].strs.count();
    for (uint32_t j = 1; j <= m; ++j)
      for (uint32_t q = 1; q <= ta.n; ++q)
        if (!ta.is_gap(j, q)) ++want[q];
    for (uint32_t q = 1; q <= ta.n; ++q)
      if (got[q] != want[q]) {
        fail("column " + std::to_string(q) + ": entries cover " + std::to_string(got[q]) +
             " suffixes, alignment has " + std::to_string(want[q]));
        break;
      }
  }

  // ---- entry sequence equals the grouped naive suffix array ----
  {
    const auto ng = naive_gsa(ta.model.strs);
    if (ng.size() != saa.suffix_count)
      fail("naive suffix count " + std::to_string(ng.size()) + " != " +
           std::to_string(saa.suffix_count));
    uint32_t cur = 0;
    bool order_ok = true;
    std::vector<StrSet> members(ne + 1, StrSet(m));
    for (const GsaEntry& ge : ng) {
      const uint32_t ent = saa.entry_of[ge.str - 1][ge.pos];
      if (ent != cur) {
        if (ent != cur + 1) {
          fail("suffix (" + std::to_string(ge.str) + "," + std::to_string(ge.pos) +
               ") lands in entry " + std::to_string(ent) + " after entry " +
               std::to_string(cur));
          order_ok = false;
          break;
        }
        cur = ent;
      }
      members[ent].add(ge.str);
      if (saa.entries[ent].pos != ta.to_transformed(ge.str, ge.pos)) {
        fail("entry " + std::to_string(ent) + " column disagrees with suffix (" +
             std::to_string(ge.str) + "," + std::to_string(ge.pos) + ")");
        order_ok = false;
        break;
      }
    }
    if (order_ok && cur != ne)
      fail("naive walk covered " + std::to_string(cur) + " of " + std::to_string(ne) +
           " entries");
    if (order_ok)
      for (uint32_t i = 1; i <= ne; ++i)
        if (!(members[i] == saa.entries[i].strs)) {
          fail("entry " + std::to_string(i) + " member set disagrees with the naive walk");
          break;
        }
  }

  // ---- LF: constant per class and equal to C[s] + occ(s, i) ----
  for (uint32_t i = 1; i <= ne; ++i) {
    for (const auto& [sym, set] : saa.l_of(i)) {
      (void)set;
      uint32_t t = 0;
      try {
        t = brute_lf(ta, saa, sym, i);
      } catch (const ModelError&) {
        fail("entry " + std::to_string(i) + ", symbol " + std::to_string(int(sym)) +
             ": LF is not constant on the class");
        continue;
      }
      if (t == 0) {
        fail("entry " + std::to_string(i) + " lists symbol " + std::to_string(int(sym)) +
             " but no member is preceded by it");
        continue;
      }
      if (lf(idx, sym, i) != t)
        fail("lf(" + std::to_string(int(sym)) + ", " + std::to_string(i) + ") = " +
             std::to_string(lf(idx, sym, i)) + ", definitional target " + std::to_string(t));
    }
  }

  // ---- B-marked entries must have single-symbol L (their strs survive LF) ----
  for (uint32_t s = 0; s < sigma; ++s)
    for (uint32_t i = 1; i <= ne; ++i)
      if (saa.bmark[s].test(i)) {
        const SaaEntry& e = saa.entries[i];
        if (e.l_count != 1 || e.l_sym != s)
          fail("B-marked entry " + std::to_string(i) + " does not have L = {" +
               std::to_string(int(s)) + "}");
      }

  // ---- counted / B classification from scratch ----
  {
    for (uint32_t s = 0; s < sigma; ++s) {
      std::vector<std::pair<uint32_t, uint32_t>> pairs;  // (target, entry)
      for (uint32_t i = 1; i <= ne; ++i)
        for (const auto& [sym, set] : saa.l_of(i)) {
          (void)set;
          if (sym == s) pairs.emplace_back(brute_lf(ta, saa, sym, i), i);
        }
      std::sort(pairs.begin(), pairs.end());
      std::vector<uint8_t> want_counted(ne + 1, 0), want_b(ne + 1, 0);
      for (size_t a = 0; a < pairs.size();) {
        size_t b = a;
        while (b < pairs.size() && pairs[b].first == pairs[a].first) ++b;
        want_counted[pairs[a].second] = 1;
        if (b - a > 1)
          for (size_t k = a; k < b; ++k) want_b[pairs[k].second] = 1;
        a = b;
      }
      for (uint32_t i = 1; i <= ne; ++i) {
        if (saa.counted[s].test(i) != bool(want_counted[i]) ||
            idx.counted[s].test(i) != bool(want_counted[i])) {
          fail("counted bit (" + std::to_string(int(s)) + ", " + std::to_string(i) +
               ") disagrees with recomputation");
          break;
        }
        if (saa.bmark[s].test(i) != bool(want_b[i]) ||
            idx.bmark[s].test(i) != bool(want_b[i])) {
          fail("B bit (" + std::to_string(int(s)) + ", " + std::to_string(i) +
               ") disagrees with recomputation");
          break;
        }
      }
    }
  }

  // ---- C table ----
  {
    std::vector<uint64_t> want(sigma + 1, 0);
    for (uint32_t i = 1; i <= ne; ++i) want[saa.entries[i].f_sym + 1] += 1;
    for (uint32_t s = 1; s <= sigma; ++s) want[s] += want[s - 1];
    if (saa.C != want) fail("build-side C table disagrees with F symbols");
    if (idx.C != want) fail("index C table disagrees with F symbols");
  }

  // ---- rank agreement across acceleration modes ----
  for (uint32_t s = 0; s < sigma; ++s) {
    const Bitmap alt =
        Bitmap::from_words(ne, idx.counted[s].words(), RankMode::kPrefixSums);
    for (uint32_t i = 1; i <= ne; ++i)
      if (alt.rank1(i) != idx.counted[s].rank1(i)) {
        fail("rank modes disagree on counted[" + std::to_string(int(s)) + "] at " +
             std::to_string(i));
        break;
      }
  }

  // ---- sampling ----
  for (uint32_t i = 1; i <= ne; ++i) {
    const SaaEntry& e = saa.entries[i];
    const bool expect =
        (e.pos % idx.rate == 0) || e.pos == 1 || saa.irregular(i);
    if (idx.saa.marked.test(i) != expect) {
      fail("entry " + std::to_string(i) + (expect ? " should" : " should not") +
           " be marked");
      continue;
    }
    if (expect) {
      const SamplePayload& pl = idx.payload_of(i);
      if (pl.pos != e.pos || !(pl.strs == e.strs))
        fail("payload of entry " + std::to_string(i) + " disagrees with the entry");
    }
  }
  for (uint32_t j = 1; j <= m; ++j) {
    const auto& vec = idx.isaa.samples[j - 1];
    if (vec.empty() || vec.back().first != ta.n) {
      fail("inverse samples of string " + std::to_string(j) + " do not end at column n");
      continue;
    }
    uint32_t prev_q = 0;
    for (auto [q, ent] : vec) {
      if (q <= prev_q || ta.is_gap(j, q)) {
        fail("inverse sample (" + std::to_string(j) + ", " + std::to_string(q) +
             ") is out of order or on a gap");
        break;
      }
      prev_q = q;
      if (saa.entry_of[j - 1][ta.to_original(j, q)] != ent) {
        fail("inverse sample (" + std::to_string(j) + ", " + std::to_string(q) +
             ") points at the wrong entry");
        break;
      }
    }
  }

  // ---- spot queries against the naive scans ----
  {
    const SimilarStrings& strs = ta.model.strs;
    std::mt19937_64 rng(uint64_t(ta.n) * 2654435761u + m);
    std::vector<std::string> pats;
    const std::string& s1 = strs.str(1);
    for (uint32_t len : {1u, 2u, 3u, 5u, 8u})
      if (s1.size() >= len + 2)
        for (int k = 0; k < 3; ++k) {
          std::uniform_int_distribution<size_t> at(1, s1.size() - 1 - len);
          pats.push_back(s1.substr(at(rng), len));
        }
    const auto reg = strs.alphabet.regular();
    if (!reg.empty())
      for (int k = 0; k < 8; ++k) {
        std::uniform_int_distribution<size_t> len(1, 6), at(0, reg.size() - 1);
        std::string p;
        for (size_t t = len(rng); t > 0; --t) p += reg[at(rng)];
        pats.push_back(std::move(p));
      }
    for (const std::string& pat : pats) {
      if (locate(idx, pat) != naive_locate(strs, pat)) {
        fail("locate(\"" + pat + "\") disagrees with the naive scan");
        break;
      }
    }
    for (uint32_t j = 1; j <= m; ++j) {
      std::uniform_int_distribution<uint32_t> sd(1, strs.len(j));
      for (int k = 0; k < 4; ++k) {
        uint32_t a = sd(rng), b = sd(rng);
        if (a > b) std::swap(a, b);
        if (extract(idx, j, a, b) != naive_extract(strs, j, a, b)) {
          fail("extract(" + std::to_string(j) + ", " + std::to_string(a) + ", " +
               std::to_string(b) + ") disagrees with the naive scan");
          break;
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate(const TransformedAlignment& ta, const SAAIndex& saa,
                          const Index& idx) {
  ValidationReport rep;
  // A damaged index can make query primitives throw mid-check; that is a
  // finding, not a reason to bail out of validation.
  try {
    run_checks(ta, saa, idx, rep);
  } catch (const std::exception& ex) {
    rep.failures.push_back(std::string("validation aborted: ") + ex.what());
  }
  return rep;
}

Instance generate_instance(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  if (cfg.symbols.empty() || cfg.min_ref == 0 || cfg.min_ref > cfg.max_ref ||
      cfg.min_m == 0 || cfg.min_m > cfg.max_m)
    throw ArgumentError("bad generator configuration");
  std::uniform_int_distribution<uint32_t> ref_len(cfg.min_ref, cfg.max_ref);
  std::uniform_int_distribution<uint32_t> m_dist(cfg.min_m, cfg.max_m);
  std::uniform_int_distribution<size_t> sym(0, cfg.symbols.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<uint32_t> span(1, 3);

  for (int attempt = 0; attempt < 100; ++attempt) {
    const uint32_t L = ref_len(rng);
    std::string ref(L, '?');
    for (auto& c : ref) c = cfg.symbols[sym(rng)];
    const uint32_t nstr = m_dist(rng);
    std::vector<VariantSet> vars(nstr);
    for (auto& vs : vars) {
      uint32_t p = 2;  // keep the leading common region nonempty
      while (p <= L) {
        const double u = unit(rng);
        if (u < cfg.sub) {
          Variant v;
          v.pos = p;
          v.ref = ref.substr(p - 1, 1);
          do
            v.alt = std::string(1, cfg.symbols[sym(rng)]);
          while (cfg.symbols.size() > 1 && v.alt[0] == ref[p - 1]);
          vs.push_back(std::move(v));
          p += 1;
        } else if (u < cfg.sub + cfg.ins) {
          Variant v;
          v.pos = p;
          v.ref = ref.substr(p - 1, 1);
          v.alt = v.ref;
          for (uint32_t t = span(rng); t > 0; --t) v.alt += cfg.symbols[sym(rng)];
          vs.push_back(std::move(v));
          p += 1;
        } else if (u < cfg.sub + cfg.ins + cfg.del) {
          Variant v;
          v.pos = p;
          const uint32_t k = std::min(span(rng), L - p + 1);
          v.ref = ref.substr(p - 1, k);
          vs.push_back(std::move(v));
          p += k;
        } else {
          p += 1;
        }
      }
    }
    try {
      auto [strs, seg] = from_variants(ref, vars);
      segment(strs, seg);  // probe: throws ModelError if anchors are not realizable
      Instance inst;
      inst.reference = std::move(ref);
      inst.variants = std::move(vars);
      inst.strs = std::move(strs);
      inst.seg = std::move(seg);
      return inst;
    } catch (const ModelError&) {
      continue;
    }
  }
  throw ModelError("failed to generate a model-conforming instance");
}

}  // namespace fmalign::oracle
