#include "fma/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace fmalign {

namespace {

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
  throw FormatError("line " + std::to_string(lineno) + ": " + what);
}

uint64_t parse_uint(const std::string& tok, size_t lineno, const char* what) {
  uint64_t v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    bad_line(lineno, std::string("expected unsigned integer for ") + what);
  return v;
}

std::string decode_text(std::string tok) { return tok == "." ? std::string() : tok; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t from = 0;
  while (true) {
    size_t at = line.find(sep, from);
    if (at == std::string::npos) {
      out.push_back(line.substr(from));
      return out;
    }
    out.push_back(line.substr(from, at - from));
    from = at + 1;
  }
}

}  // namespace

// --------------------------------------------------------- alignment text

ParsedAlignment parse_alignment(std::istream& in) {
  size_t lineno = 0;
  std::string line;
  auto next_line = [&]() -> const std::string& {
    if (!std::getline(in, line)) bad_line(lineno + 1, "unexpected end of input");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "#FMA-ALIGN 1") bad_line(lineno, "missing '#FMA-ALIGN 1' header");

  next_line();
  std::string syms;
  if (line == "ALPHABET")
    syms.clear();
  else if (line.rfind("ALPHABET ", 0) == 0)
    syms = line.substr(9);
  else
    bad_line(lineno, "expected ALPHABET line");
  ParsedAlignment pa;
  pa.alphabet = Alphabet::from_symbols(syms);

  next_line();
  if (line.rfind("R ", 0) != 0) bad_line(lineno, "expected R line");
  const uint64_t r = parse_uint(line.substr(2), lineno, "R");

  pa.seg.common.resize(r + 1);
  for (uint64_t i = 0; i <= r; ++i) {
    next_line();
    if (line.rfind("A ", 0) != 0) bad_line(lineno, "expected A line");
    pa.seg.common[i] = decode_text(line.substr(2));
    for (char c : pa.seg.common[i])
      if (pa.alphabet.id(c) < 2) bad_line(lineno, "A text outside the declared alphabet");
  }

  next_line();
  if (line.rfind("M ", 0) != 0) bad_line(lineno, "expected M line");
  const uint64_t m = parse_uint(line.substr(2), lineno, "M");
  if (m == 0) bad_line(lineno, "M must be at least 1");

  pa.seg.variant.assign(m, std::vector<std::string>(r));
  std::vector<std::vector<uint8_t>> seen(m, std::vector<uint8_t>(r, 0));
  for (uint64_t k = 0; k < m * r; ++k) {
    next_line();
    auto tok = split(line, ' ');
    if (tok.size() != 4 || tok[0] != "D") bad_line(lineno, "expected 'D <j> <i> <text>'");
    const uint64_t j = parse_uint(tok[1], lineno, "D row");
    const uint64_t i = parse_uint(tok[2], lineno, "D slot");
    if (j == 0 || j > m) bad_line(lineno, "D row out of range");
    if (i == 0 || i > r) bad_line(lineno, "D slot out of range");
    if (seen[j - 1][i - 1]) bad_line(lineno, "duplicate D line");
    seen[j - 1][i - 1] = 1;
    pa.seg.variant[j - 1][i - 1] = decode_text(tok[3]);
    for (char c : pa.seg.variant[j - 1][i - 1])
      if (pa.alphabet.id(c) < 2) bad_line(lineno, "D text outside the declared alphabet");
  }
  if (std::getline(in, line)) bad_line(lineno + 1, "trailing content");

  pa.raw.resize(m);
  for (uint64_t j = 0; j < m; ++j) {
    std::string s = pa.seg.common[0];
    for (uint64_t i = 0; i < r; ++i) {
      s += pa.seg.variant[j][i];
      s += pa.seg.common[i + 1];
    }
    pa.raw[j] = std::move(s);
  }
  return pa;
}

ParsedAlignment parse_alignment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open alignment file: " + path);
  return parse_alignment(in);
}

// ------------------------------------------------------------ variant text

VariantSet parse_variants(std::istream& in) {
  VariantSet out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tok = split(line, '\t');
    if (tok.size() != 3) bad_line(lineno, "expected POS<TAB>REF<TAB>ALT");
    Variant v;
    const uint64_t pos = parse_uint(tok[0], lineno, "POS");
    if (pos == 0 || pos > UINT32_MAX) bad_line(lineno, "POS out of range");
    v.pos = static_cast<uint32_t>(pos);
    v.ref = tok[1];
    v.alt = decode_text(tok[2]);
    if (v.ref.empty() || v.ref == ".") bad_line(lineno, "REF must be literal text");
    out.push_back(std::move(v));
  }
  return out;
}

VariantSet parse_variants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open variant file: " + path);
  return parse_variants(in);
}

std::pair<SimilarStrings, Segmentation> from_variants(
    const std::string& reference, const std::vector<VariantSet>& samples) {
  if (samples.empty()) throw ArgumentError("at least one sample is required");
  for (char c : reference)
    if (Alphabet::is_sentinel(c)) throw ModelError("reference contains a sentinel symbol");
  const uint64_t L = reference.size();

  struct Iv {
    uint64_t a, b;
  };
  std::vector<Iv> ivs;
  for (size_t sidx = 0; sidx < samples.size(); ++sidx) {
    uint64_t prev_end = 0;
    for (const Variant& v : samples[sidx]) {
      auto where = [&] {
        return "sample " + std::to_string(sidx + 1) + ", variant at position " +
               std::to_string(v.pos);
      };
      if (v.pos == 0 || v.ref.empty()) throw FormatError(where() + ": malformed variant");
      const uint64_t a = v.pos, b = v.pos + v.ref.size() - 1;
      if (b > L) throw FormatError(where() + ": REF extends past the reference end");
      if (a <= prev_end)
        throw FormatError(where() + ": variants must be sorted and non-overlapping");
      if (reference.compare(a - 1, v.ref.size(), v.ref) != 0)
        throw FormatError(where() + ": REF does not match the reference");
      for (char c : v.alt)
        if (Alphabet::is_sentinel(c)) throw FormatError(where() + ": ALT contains a sentinel");
      prev_end = b;
      ivs.push_back({a, b});
    }
  }

  // Union of variant intervals across samples; overlapping or adjacent
  // intervals collapse into one region.
  std::sort(ivs.begin(), ivs.end(), [](const Iv& x, const Iv& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<Iv> regions;
  for (const Iv& iv : ivs) {
    if (!regions.empty() && iv.a <= regions.back().b + 1)
      regions.back().b = std::max(regions.back().b, iv.b);
    else
      regions.push_back(iv);
  }

  Segmentation seg;
  const size_t R = regions.size();
  seg.common.resize(R + 1);
  if (R == 0) {
    seg.common[0] = reference;
  } else {
    seg.common[0] = reference.substr(0, regions[0].a - 1);
    for (size_t k = 1; k < R; ++k)
      seg.common[k] = reference.substr(regions[k - 1].b, regions[k].a - regions[k - 1].b - 1);
    seg.common[R] = reference.substr(regions[R - 1].b);
  }

  seg.variant.assign(samples.size(), std::vector<std::string>(R));
  for (size_t sidx = 0; sidx < samples.size(); ++sidx) {
    const VariantSet& vs = samples[sidx];
    size_t vi = 0;
    for (size_t k = 0; k < R; ++k) {
      const uint64_t a = regions[k].a, b = regions[k].b;
      std::string content;
      uint64_t cursor = a;
      while (vi < vs.size() && vs[vi].pos <= b) {
        const Variant& v = vs[vi];
        content.append(reference, cursor - 1, v.pos - cursor);
        content += v.alt;
        cursor = v.pos + v.ref.size();
        ++vi;
      }
      content.append(reference, cursor - 1, b - cursor + 1);
      seg.variant[sidx][k] = std::move(content);
    }
  }

  std::vector<std::string> raw(samples.size());
  for (size_t sidx = 0; sidx < samples.size(); ++sidx) {
    std::string s = seg.common[0];
    for (size_t k = 0; k < R; ++k) {
      s += seg.variant[sidx][k];
      s += seg.common[k + 1];
    }
    raw[sidx] = std::move(s);
  }
  return {SimilarStrings::from_raw(std::move(raw)), std::move(seg)};
}

// ------------------------------------------------------------- index image

namespace {

uint32_t crc32(const void* data, size_t len) {
  static const std::array<uint32_t, 256> table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  uint32_t crc = 0xFFFFFFFFu;
  const uint8_t* p = static_cast<const uint8_t*>(data);
  for (size_t i = 0; i < len; ++i) crc = table[(crc ^ p[i]) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

struct Writer {
  std::string buf;
  void u8(uint8_t v) { buf.push_back(static_cast<char>(v)); }
  void u16(uint16_t v) {
    for (int k = 0; k < 2; ++k) buf.push_back(static_cast<char>(v >> (8 * k)));
  }
  void u32(uint32_t v) {
    for (int k = 0; k < 4; ++k) buf.push_back(static_cast<char>(v >> (8 * k)));
  }
  void u64(uint64_t v) {
    for (int k = 0; k < 8; ++k) buf.push_back(static_cast<char>(v >> (8 * k)));
  }
  void bytes(const void* p, size_t n) { buf.append(static_cast<const char*>(p), n); }
  void bitmap(const Bitmap& b) {
    u64(b.size());
    for (uint64_t w : b.words()) u64(w);
  }
  void strset(const StrSet& s) {
    if (s.is_all()) {
      u8(0);  // whole-collection sets compress to a sentinel tag
    } else {
      u8(1);
      for (uint64_t w : s.words()) u64(w);
    }
  }
};

struct Reader {
  const char* p;
  size_t len, off = 0;

  void need(size_t n) const {
    if (off + n > len) throw FormatError("truncated index image");
  }
  uint8_t u8() {
    need(1);
    return static_cast<uint8_t>(p[off++]);
  }
  uint16_t u16() {
    need(2);
    uint16_t v = 0;
    for (int k = 0; k < 2; ++k) v |= static_cast<uint16_t>(static_cast<uint8_t>(p[off++])) << (8 * k);
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<uint32_t>(static_cast<uint8_t>(p[off++])) << (8 * k);
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<uint64_t>(static_cast<uint8_t>(p[off++])) << (8 * k);
    return v;
  }
  std::string bytes(size_t n) {
    need(n);
    std::string s(p + off, n);
    off += n;
    return s;
  }
  Bitmap bitmap(uint64_t expect_bits) {
    const uint64_t nbits = u64();
    if (nbits != expect_bits) throw FormatError("bit array size mismatch");
    const size_t nwords = (nbits + 1 + 63) / 64;
    std::vector<uint64_t> words(nwords);
    for (size_t k = 0; k < nwords; ++k) words[k] = u64();
    return Bitmap::from_words(nbits, std::move(words), RankMode::kBlocks);
  }
  StrSet strset(uint32_t m, const StrSet& all_mask) {
    const uint8_t tag = u8();
    if (tag == 0) return StrSet::all(m);
    if (tag != 1) throw FormatError("bad string-set tag");
    StrSet s(m);
    for (size_t k = 0; k < s.words().size(); ++k) s.words()[k] = u64();
    for (size_t k = 0; k < s.words().size(); ++k)
      if (s.words()[k] & ~all_mask.words()[k]) throw FormatError("string set has stray bits");
    return s;
  }
  void done() const {
    if (off != len) throw FormatError("section length mismatch");
  }
};

void write_core(const Index& idx, Writer& w) {
  w.u32(idx.m);
  w.u32(idx.n);
  w.u32(idx.rate);
  w.u64(idx.entry_count);
  const auto reg = idx.alphabet.regular();
  w.u16(static_cast<uint16_t>(reg.size()));
  w.bytes(reg.data(), reg.size());
  for (uint32_t v : idx.len) w.u32(v);
  for (uint64_t v : idx.C) w.u64(v);
  for (const Bitmap& b : idx.counted) w.bitmap(b);
  for (const Bitmap& b : idx.bmark) w.bitmap(b);
}

void write_gap(const Index& idx, Writer& w) {
  for (const GapTable& gt : idx.gaps) {
    w.u32(static_cast<uint32_t>(gt.runs().size()));
    for (auto [b, e] : gt.runs()) {
      w.u32(b);
      w.u32(e);
    }
  }
}

void write_samp(const Index& idx, Writer& w) {
  w.bitmap(idx.saa.marked);
  w.u64(idx.saa.payload.size());
  for (const SamplePayload& pl : idx.saa.payload) {
    w.strset(pl.strs);
    w.u32(pl.pos);
  }
  w.u64(idx.branches.size());
  for (const auto& [entry, br] : idx.branches) {
    w.u32(entry);
    w.u16(static_cast<uint16_t>(br.parts.size()));
    for (const auto& [sym, set] : br.parts) {
      w.u8(sym);
      w.strset(set);
    }
  }
  for (const auto& vec : idx.isaa.samples) {
    w.u64(vec.size());
    for (auto [q, ent] : vec) {
      w.u32(q);
      w.u32(ent);
    }
  }
}

constexpr size_t kHeaderSize = 4 + 4 + 4 + 3 * 8;

}  // namespace

void save_index(const Index& idx, std::ostream& out) {
  Writer core, gap, samp;
  write_core(idx, core);
  write_gap(idx, gap);
  write_samp(idx, samp);
  std::string payload;
  payload.reserve(core.buf.size() + gap.buf.size() + samp.buf.size());
  payload += core.buf;
  payload += gap.buf;
  payload += samp.buf;

  Writer header;
  header.bytes("FMAG", 4);
  header.u32(1);  // image version
  header.u32(crc32(payload.data(), payload.size()));
  header.u64(core.buf.size());
  header.u64(gap.buf.size());
  header.u64(samp.buf.size());
  out.write(header.buf.data(), static_cast<std::streamsize>(header.buf.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw FormatError("failed to write index image");
}

void save_index_file(const Index& idx, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open output file: " + path);
  save_index(idx, out);
}

Index load_index(std::istream& in) {
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (all.size() < kHeaderSize) throw FormatError("truncated index image");
  if (all.compare(0, 4, "FMAG") != 0) throw FormatError("bad magic");
  Reader hdr{all.data() + 4, kHeaderSize - 4};
  const uint32_t version = hdr.u32();
  if (version != 1) throw FormatError("unsupported index image version");
  const uint32_t crc = hdr.u32();
  const uint64_t core_len = hdr.u64(), gap_len = hdr.u64(), samp_len = hdr.u64();
  if (all.size() != kHeaderSize + core_len + gap_len + samp_len)
    throw FormatError("index image size mismatch");
  if (crc32(all.data() + kHeaderSize, all.size() - kHeaderSize) != crc)
    throw FormatError("checksum mismatch");

  Index idx;

  // ---- core ----
  {
    Reader r{all.data() + kHeaderSize, core_len};
    idx.m = r.u32();
    idx.n = r.u32();
    idx.rate = r.u32();
    const uint64_t entries = r.u64();
    if (idx.m == 0 || idx.rate == 0 || entries > UINT32_MAX)
      throw FormatError("implausible index header");
    idx.entry_count = static_cast<uint32_t>(entries);
    const uint16_t nreg = r.u16();
    idx.alphabet = Alphabet::from_symbols(r.bytes(nreg));
    idx.len.resize(idx.m);
    for (uint32_t j = 0; j < idx.m; ++j) idx.len[j] = r.u32();
    const uint32_t sigma = idx.alphabet.size();
    idx.C.resize(sigma + 1);
    for (uint32_t s = 0; s <= sigma; ++s) idx.C[s] = r.u64();
    if (idx.C[0] != 0 || idx.C[sigma] != idx.entry_count ||
        !std::is_sorted(idx.C.begin(), idx.C.end()))
      throw FormatError("malformed counts table");
    idx.counted.reserve(sigma);
    idx.bmark.reserve(sigma);
    for (uint32_t s = 0; s < sigma; ++s) idx.counted.push_back(r.bitmap(idx.entry_count));
    for (uint32_t s = 0; s < sigma; ++s) idx.bmark.push_back(r.bitmap(idx.entry_count));
    r.done();
  }

  // ---- gap ----
  {
    Reader r{all.data() + kHeaderSize + core_len, gap_len};
    idx.gaps.reserve(idx.m);
    for (uint32_t j = 0; j < idx.m; ++j) {
      const uint32_t nruns = r.u32();
      std::vector<std::pair<uint32_t, uint32_t>> runs(nruns);
      for (uint32_t k = 0; k < nruns; ++k) {
        runs[k].first = r.u32();
        runs[k].second = r.u32();
        if (runs[k].second > idx.n) throw FormatError("gap run out of range");
      }
      try {
        idx.gaps.emplace_back(std::move(runs));
      } catch (const ArgumentError&) {
        throw FormatError("malformed gap table");
      }
    }
    r.done();
  }

  // ---- sampling ----
  {
    Reader r{all.data() + kHeaderSize + core_len + gap_len, samp_len};
    const StrSet all_mask = StrSet::all(idx.m);
    idx.saa.rate = idx.rate;
    idx.saa.marked = r.bitmap(idx.entry_count);
    const uint64_t npayload = r.u64();
    if (npayload != idx.saa.marked.ones())
      throw FormatError("sample payload count mismatch");
    idx.saa.payload.reserve(npayload);
    for (uint64_t k = 0; k < npayload; ++k) {
      SamplePayload pl;
      pl.strs = r.strset(idx.m, all_mask);
      pl.pos = r.u32();
      if (pl.pos == 0 || pl.pos > idx.n) throw FormatError("sample position out of range");
      idx.saa.payload.push_back(std::move(pl));
    }
    const uint64_t nbranch = r.u64();
    idx.branches.reserve(nbranch);
    uint32_t prev_entry = 0;
    for (uint64_t k = 0; k < nbranch; ++k) {
      const uint32_t entry = r.u32();
      if (entry <= prev_entry || entry > idx.entry_count)
        throw FormatError("branch entries must be ascending");
      prev_entry = entry;
      LBranch br;
      const uint16_t nparts = r.u16();
      if (nparts < 2) throw FormatError("branch partition must have at least two classes");
      br.parts.reserve(nparts);
      for (uint16_t t = 0; t < nparts; ++t) {
        const uint8_t sym = r.u8();
        if (sym >= idx.alphabet.size()) throw FormatError("branch symbol out of range");
        br.parts.emplace_back(sym, r.strset(idx.m, all_mask));
      }
      idx.branches.emplace_back(entry, std::move(br));
    }
    idx.isaa.samples.resize(idx.m);
    for (uint32_t j = 0; j < idx.m; ++j) {
      const uint64_t ns = r.u64();
      auto& vec = idx.isaa.samples[j];
      vec.reserve(ns);
      uint32_t prev_q = 0;
      for (uint64_t k = 0; k < ns; ++k) {
        const uint32_t q = r.u32();
        const uint32_t ent = r.u32();
        if (q <= prev_q || q > idx.n || ent == 0 || ent > idx.entry_count)
          throw FormatError("malformed inverse sample");
        prev_q = q;
        vec.emplace_back(q, ent);
      }
    }
    r.done();
  }
  return idx;
}

Index load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open index file: " + path);
  return load_index(in);
}

IndexStats stats(const Index& idx) {
  Writer core, gap, samp;
  write_core(idx, core);
  write_gap(idx, gap);
  write_samp(idx, samp);
  IndexStats st;
  st.entries = idx.entry_count;
  st.m = idx.m;
  st.n = idx.n;
  st.rate = idx.rate;
  st.core_bytes = kHeaderSize + core.buf.size();
  st.gap_bytes = gap.buf.size();
  st.sampling_bytes = samp.buf.size();
  st.total_bytes = st.core_bytes + st.gap_bytes + st.sampling_bytes;
  return st;
}

}  // namespace fmalign
