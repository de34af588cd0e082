// fma — build and query compressed indexes over collections of similar
// strings.  Exit codes: 0 success, 1 pattern not found, 2 usage error,
// 3 malformed input / model violation / I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fma/index.hpp"
#include "fma/ingest.hpp"
#include "fma/oracle.hpp"
#include "fma/search.hpp"

namespace fs = std::filesystem;
using namespace fmalign;

namespace {

std::string read_reference(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open reference file: " + path);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.find('\n') != std::string::npos || s.find('\r') != std::string::npos)
    throw FormatError("reference must be a single line");
  if (s.empty()) throw FormatError("reference is empty");
  return s;
}

// Sample ids follow lexicographic filename order; an empty file is a sample
// identical to the reference.
std::vector<VariantSet> read_variant_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file()) files.push_back(de.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw FormatError("variant directory is empty: " + dir);
  std::vector<VariantSet> samples;
  samples.reserve(files.size());
  for (const auto& f : files) samples.push_back(parse_variants_file(f.string()));
  return samples;
}

struct Source {
  std::string align, ref, variants;

  std::pair<SimilarStrings, Segmentation> load() const {
    if (!align.empty()) {
      ParsedAlignment pa = parse_alignment_file(align);
      return {SimilarStrings::from_raw(std::move(pa.raw), pa.alphabet), std::move(pa.seg)};
    }
    if (ref.empty() || variants.empty())
      throw ArgumentError("either --align or both --ref and --variants are required");
    return from_variants(read_reference(ref), read_variant_dir(variants));
  }
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* a = cmd->add_option("--align", src.align, "alignment exchange file")
                ->check(CLI::ExistingFile);
  auto* r = cmd->add_option("--ref", src.ref, "reference text file (single line)")
                ->check(CLI::ExistingFile);
  auto* v = cmd->add_option("--variants", src.variants,
                            "directory of per-sample variant files")
                ->check(CLI::ExistingDirectory);
  a->excludes(r)->excludes(v);
}

void print_stats(const IndexStats& st) {
  printf("entries:        %llu\n", (unsigned long long)st.entries);
  printf("strings:        %u\n", st.m);
  printf("columns:        %u\n", st.n);
  printf("rate:           %u\n", st.rate);
  printf("core_bytes:     %llu\n", (unsigned long long)st.core_bytes);
  printf("gap_bytes:      %llu\n", (unsigned long long)st.gap_bytes);
  printf("sampling_bytes: %llu\n", (unsigned long long)st.sampling_bytes);
  printf("total_bytes:    %llu\n", (unsigned long long)st.total_bytes);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressed full-text index over collections of similar strings"};
  app.require_subcommand(1);

  Source build_src;
  uint32_t rate = 32;
  std::string out_path;
  CLI::App* cmd_build = app.add_subcommand("build", "build an index and write it to disk");
  add_source_options(cmd_build, build_src);
  cmd_build->add_option("--rate", rate, "suffix sampling rate")->default_val(32);
  cmd_build->add_option("--out", out_path, "output index file")->required();

  std::string index_path, pattern;
  bool count_only = false;
  CLI::App* cmd_search = app.add_subcommand("search", "find a pattern in the collection");
  cmd_search->add_option("--index", index_path, "index file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_search->add_option("--pattern", pattern, "pattern to search for")->required();
  cmd_search->add_flag("--count", count_only, "print only the number of occurrences");

  uint32_t ex_str = 0, ex_from = 0, ex_to = 0;
  CLI::App* cmd_extract = app.add_subcommand("extract", "report a substring of one string");
  cmd_extract->add_option("--index", index_path, "index file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_extract->add_option("--string", ex_str, "string id (1-based)")->required();
  cmd_extract->add_option("--from", ex_from, "start position (1-based, inclusive)")->required();
  cmd_extract->add_option("--to", ex_to, "end position (1-based, inclusive)")->required();

  CLI::App* cmd_stats = app.add_subcommand("stats", "report index size by section");
  cmd_stats->add_option("--index", index_path, "index file")
      ->required()
      ->check(CLI::ExistingFile);

  Source val_src;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "rebuild from source and cross-check the index");
  cmd_validate->add_option("--index", index_path, "index file")
      ->required()
      ->check(CLI::ExistingFile);
  add_source_options(cmd_validate, val_src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_build->parsed()) {
      auto [strs, seg] = build_src.load();
      Index idx = build_index(std::move(strs), std::move(seg), rate);
      save_index_file(idx, out_path);
      IndexStats st = stats(idx);
      printf("indexed %u strings: %u columns, %llu entries, %llu bytes -> %s\n", st.m,
             st.n, (unsigned long long)st.entries, (unsigned long long)st.total_bytes,
             out_path.c_str());
      return 0;
    }

    if (cmd_search->parsed()) {
      Index idx = load_index_file(index_path);
      std::vector<Occurrence> hits = locate(idx, pattern);
      if (count_only) {
        printf("%zu\n", hits.size());
      } else {
        for (const Occurrence& oc : hits) printf("%u\t%u\n", oc.str, oc.pos);
      }
      return hits.empty() ? 1 : 0;
    }

    if (cmd_extract->parsed()) {
      Index idx = load_index_file(index_path);
      printf("%s\n", extract(idx, ex_str, ex_from, ex_to).c_str());
      return 0;
    }

    if (cmd_stats->parsed()) {
      print_stats(stats(load_index_file(index_path)));
      return 0;
    }

    if (cmd_validate->parsed()) {
      Index loaded = load_index_file(index_path);
      auto [strs, seg] = val_src.load();
      AlignmentModel model = segment(std::move(strs), std::move(seg));
      TransformedAlignment ta = transform(std::move(model));
      SAAIndex saa = build_saa(ta);
      Index rebuilt = make_index(saa, ta, loaded.rate);

      std::ostringstream img_loaded, img_rebuilt;
      save_index(loaded, img_loaded);
      save_index(rebuilt, img_rebuilt);
      if (img_loaded.str() != img_rebuilt.str()) {
        fprintf(stderr, "validate: index image differs from a rebuild of the source\n");
        return 3;
      }
      oracle::ValidationReport rep = oracle::validate(ta, saa, loaded);
      if (!rep.ok()) {
        fprintf(stderr, "validate: %s", rep.to_string().c_str());
        return 3;
      }
      printf("index is consistent with its source (%u entries, %u strings)\n",
             loaded.entry_count, loaded.m);
      return 0;
    }
  } catch (const ArgumentError& ex) {
    fprintf(stderr, "fma: %s\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    fprintf(stderr, "fma: %s\n", ex.what());
    return 3;
  }
  return 2;
}
