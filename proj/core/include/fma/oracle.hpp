#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fma/alignment.hpp"
#include "fma/index.hpp"
#include "fma/ingest.hpp"
#include "fma/saa.hpp"
#include "fma/search.hpp"

namespace fmalign::oracle {

// Reference implementations: small, direct, and independent of the collapsed
// index machinery.  Tests and the validator compare the production paths
// against these.

struct GsaEntry {
  uint32_t str = 0;  // 1-based
  uint32_t pos = 0;  // 1-based, sentinel-inclusive
  friend bool operator==(const GsaEntry&, const GsaEntry&) = default;
};

// Every suffix of every string, sorted by text under $ < # < byte order,
// ties by string id.  Built with std::sort; quadratic worst case.
std::vector<GsaEntry> naive_gsa(const SimilarStrings& strs);

// Direct substring scan over the original strings.
std::vector<Occurrence> naive_locate(const SimilarStrings& strs, std::string_view pattern);
std::string naive_extract(const SimilarStrings& strs, uint32_t j, uint32_t s, uint32_t e);

// Definitional LF: steps every member suffix of entry i preceded by sym back
// one position (cyclically for column-1 suffixes) and looks up the entry of
// the result.  Returns 0 when no member is preceded by sym; throws ModelError
// if the members disagree on the target.
uint32_t brute_lf(const TransformedAlignment& ta, const SAAIndex& saa, uint8_t sym,
                  uint32_t i);

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

// Cross-checks the collapsed build and the sampled index against the
// reference implementations:
//   - suffix conservation per column
//   - entry sequence equals the naive suffix array after grouping
//   - LF is constant per entry symbol class and matches C[s] + occ(s, i)
//   - counted / B classification matches a recomputation from brute LF
//   - B-marked entries have single-symbol L
//   - rank answers agree across both rank acceleration modes
//   - sampling is complete and payloads/inverse samples are consistent
//   - spot locate/extract queries against the naive scans
ValidationReport validate(const TransformedAlignment& ta, const SAAIndex& saa,
                          const Index& idx);

struct GeneratorConfig {
  uint32_t min_ref = 30, max_ref = 200;
  uint32_t min_m = 1, max_m = 8;
  double sub = 0.02;  // per-position substitution probability
  double ins = 0.01;  // per-position insertion probability (1-3 symbols)
  double del = 0.01;  // per-position deletion probability (1-3 positions)
  std::string symbols = "acgt";
};

struct Instance {
  std::string reference;
  std::vector<VariantSet> variants;  // one set per string
  SimilarStrings strs;
  Segmentation seg;
};

// Random reference + per-string variant sets, assembled via from_variants.
// Instances that violate the similar-strings model are regenerated.
Instance generate_instance(std::mt19937_64& rng, const GeneratorConfig& cfg = {});

}  // namespace fmalign::oracle
