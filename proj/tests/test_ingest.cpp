#include <doctest.h>

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "fma/index.hpp"
#include "fma/ingest.hpp"
#include "fma/search.hpp"

using namespace fmalign;

namespace {

const char* kFixtureText =
    "#FMA-ALIGN 1\n"
    "ALPHABET act\n"
    "R 2\n"
    "A cct\n"
    "A aac\n"
    "A .\n"
    "M 4\n"
    "D 1 1 ca\n"
    "D 1 2 c\n"
    "D 2 1 cca\n"
    "D 2 2 a\n"
    "D 3 1 tat\n"
    "D 3 2 .\n"
    "D 4 1 .\n"
    "D 4 2 c\n";

ParsedAlignment parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_alignment(in);
}

// Same polynomial as the index image checksum; used to forge a valid
// checksum over corrupted payloads so the deeper validations are reachable.
uint32_t ref_crc32(const std::string& s, size_t from) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  uint32_t crc = 0xFFFFFFFFu;
  for (size_t i = from; i < s.size(); ++i)
    crc = table[(crc ^ static_cast<uint8_t>(s[i])) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

std::string saved_fixture_image() {
  Index idx = build_index(fixture::four_strings(), fixture::four_segmentation(), 4);
  std::ostringstream out;
  save_index(idx, out);
  return out.str();
}

Index load_str(const std::string& img) {
  std::istringstream in(img);
  return load_index(in);
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("alignment exchange text round-trips the fixture") {
  ParsedAlignment pa = parse_str(kFixtureText);
  CHECK(pa.alphabet.regular() == "act");
  CHECK(pa.seg.common == fixture::four_segmentation().common);
  CHECK(pa.seg.variant == fixture::four_segmentation().variant);
  CHECK(pa.raw == std::vector<std::string>{"cctcaaacc", "cctccaaaca", "ccttataac",
                                           "cctaacc"});
  // CRLF line endings are tolerated
  std::string crlf = kFixtureText;
  size_t at = 0;
  while ((at = crlf.find('\n', at)) != std::string::npos) {
    crlf.insert(at, "\r");
    at += 2;
  }
  ParsedAlignment pa2 = parse_str(crlf);
  CHECK(pa2.raw == pa.raw);
}

TEST_CASE("alignment exchange text rejects malformed input") {
  auto reject = [](std::string text, const char* why) {
    CAPTURE(why);
    CHECK_THROWS_AS(parse_str(text), FormatError);
  };
  reject("", "empty input");
  reject("#FMA-ALIGN 2\nALPHABET a\nR 0\nA a\nM 1\n", "unknown version");
  reject("ALPHABET a\nR 0\nA a\nM 1\n", "missing header");
  reject("#FMA-ALIGN 1\nR 0\nA a\nM 1\n", "missing alphabet");
  reject("#FMA-ALIGN 1\nALPHABET a$\nR 0\nA a\nM 1\n", "sentinel in alphabet");
  reject("#FMA-ALIGN 1\nALPHABET a\nR x\nA a\nM 1\n", "non-numeric r");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 1\nA a\nM 1\nD 1 1 a\n", "missing A line");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 0\nA ab\nM 1\n", "symbol outside alphabet");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 0\nA a\nM 0\n", "zero strings");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 1\nA a\nA a\nM 1\nD 1 2 a\n", "slot out of range");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 1\nA a\nA a\nM 2\nD 1 1 a\nD 1 1 a\n",
         "duplicate slot");
  reject("#FMA-ALIGN 1\nALPHABET a\nR 0\nA a\nM 1\nextra\n", "trailing content");
  reject(std::string(kFixtureText) + "\n", "trailing blank line");
}

TEST_CASE("variant text parsing") {
  std::istringstream in("2\tC\t.\n\n17\tGG\tA\n");
  VariantSet vs = parse_variants(in);
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].pos == 2);
  CHECK(vs[0].ref == "C");
  CHECK(vs[0].alt == "");
  CHECK(vs[1].pos == 17);
  CHECK(vs[1].ref == "GG");
  CHECK(vs[1].alt == "A");

  auto reject = [](const char* text) {
    std::istringstream bad(text);
    CHECK_THROWS_AS(parse_variants(bad), FormatError);
  };
  reject("2\tC\n");            // missing field
  reject("2\tC\tA\tz\n");      // extra field
  reject("0\tC\tA\n");         // position must be 1-based
  reject("x\tC\tA\n");         // non-numeric position
  reject("2\t.\tA\n");         // REF spelled '.' is not allowed
  reject("2\t\tA\n");          // empty REF
}

TEST_CASE("building a collection from variants: deletion") {
  // sample A deletes the C at position 2; sample B equals the reference
  auto [strs, seg] = from_variants("ACGT", {{{2, "C", ""}}, {}});
  CHECK(strs.str(1) == "$AGT#");
  CHECK(strs.str(2) == "$ACGT#");
  CHECK(seg.common == std::vector<std::string>{"A", "GT"});
  CHECK(seg.variant[0] == std::vector<std::string>{""});
  CHECK(seg.variant[1] == std::vector<std::string>{"C"});
}

TEST_CASE("building a collection from variants: overlapping sites merge") {
  // A rewrites position 2, B rewrites position 3; the union is one region
  auto [strs, seg] = from_variants("ACGT", {{{2, "C", "CT"}}, {{3, "G", "A"}}});
  CHECK(seg.common == std::vector<std::string>{"A", "T"});
  CHECK(seg.variant[0] == std::vector<std::string>{"CTG"});
  CHECK(seg.variant[1] == std::vector<std::string>{"CA"});
  CHECK(strs.str(1) == "$ACTGT#");
  CHECK(strs.str(2) == "$ACAT#");
}

TEST_CASE("building a collection from variants: adjacent sites merge") {
  auto [strs, seg] = from_variants("ACGT", {{{2, "C", ""}}, {{3, "G", "A"}}});
  CHECK(seg.common == std::vector<std::string>{"A", "T"});
  CHECK(seg.variant[0] == std::vector<std::string>{"G"});
  CHECK(seg.variant[1] == std::vector<std::string>{"CA"});
  CHECK(strs.str(1) == "$AGT#");
  CHECK(strs.str(2) == "$ACAT#");
}

TEST_CASE("variant application is rejected when inconsistent") {
  CHECK_THROWS_AS(from_variants("ACGT", {}), ArgumentError);
  // REF text must match the reference
  CHECK_THROWS_AS(from_variants("ACGT", {{{2, "G", "A"}}}), FormatError);
  // REF must stay in bounds
  CHECK_THROWS_AS(from_variants("ACGT", {{{4, "TT", "A"}}}), FormatError);
  // per-sample variants must be sorted and non-overlapping
  CHECK_THROWS_AS(from_variants("ACGT", {{{3, "G", "A"}, {2, "C", "A"}}}), FormatError);
  CHECK_THROWS_AS(from_variants("ACGT", {{{2, "CG", "A"}, {3, "G", "A"}}}), FormatError);
  // sentinels cannot appear in the reference or in replacement text
  CHECK_THROWS_AS(from_variants("AC$T", {{}}), ModelError);
  CHECK_THROWS_AS(from_variants("ACGT", {{{2, "C", "a#"}}}), FormatError);
}

TEST_CASE("index image round-trip preserves every answer") {
  Index idx = build_index(fixture::four_strings(), fixture::four_segmentation(), 4);
  std::stringstream img;
  save_index(idx, img);
  Index idx2 = load_index(img);

  for (const char* pat : {"a", "ac", "aaacc", "cct", "tata", "q"})
    CHECK(locate(idx, pat) == locate(idx2, pat));
  for (uint32_t j = 1; j <= 4; ++j)
    CHECK(extract(idx, j, 1, idx.len[j - 1]) == extract(idx2, j, 1, idx2.len[j - 1]));

  // a second save is byte-identical (serialization is canonical)
  std::ostringstream img2;
  save_index(idx2, img2);
  CHECK(img.str() == img2.str());

  // reported section sizes add up to the file size
  IndexStats st = stats(idx);
  CHECK(st.total_bytes == img.str().size());
  CHECK(st.core_bytes + st.gap_bytes + st.sampling_bytes == st.total_bytes);
  CHECK(st.entries == 24);
}

TEST_CASE("index image rejects corruption") {
  const std::string good = saved_fixture_image();

  std::string bad = good;
  bad[0] = 'X';
  CHECK_THROWS_WITH_AS(load_str(bad), "bad magic", FormatError);

  bad = good;
  bad[4] = 9;  // version field
  CHECK_THROWS_WITH_AS(load_str(bad), "unsupported index image version", FormatError);

  bad = good;
  bad[40] ^= 0x01;  // payload byte
  CHECK_THROWS_WITH_AS(load_str(bad), "checksum mismatch", FormatError);

  bad = good.substr(0, good.size() - 3);
  CHECK_THROWS_WITH_AS(load_str(bad), "index image size mismatch", FormatError);

  CHECK_THROWS_WITH_AS(load_str("FMAG"), "truncated index image", FormatError);
  CHECK_THROWS_WITH_AS(load_str(""), "truncated index image", FormatError);
}

TEST_CASE("index image validates content behind the checksum") {
  const std::string good = saved_fixture_image();
  // zero out the rate field (header is 36 bytes, rate sits 8 bytes into the
  // core section), then forge the checksum so parsing reaches the semantic
  // validation
  std::string bad = good;
  for (int k = 0; k < 4; ++k) bad[36 + 8 + k] = 0;
  const uint32_t crc = ref_crc32(bad, 36);
  for (int k = 0; k < 4; ++k) bad[8 + k] = static_cast<char>(crc >> (8 * k));
  CHECK_THROWS_WITH_AS(load_str(bad), "implausible index header", FormatError);
}

}  // TEST_SUITE
