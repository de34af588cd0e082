#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kAlignText =
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

struct Run {
  int rc;
  std::string out;
};

// Runs the installed binary with stdout captured to a scratch file.
Run run(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd =
      std::string(FMA_BIN) + " " + args + " > " + out.string() + " 2> " +
      (dir / "stderr.txt").string();
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
  REQUIRE(f.good());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fma_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("build, search, extract, stats, validate from an alignment file") {
  TempDir tmp;
  write_file(tmp.path / "align.txt", kAlignText);
  const std::string idx = (tmp.path / "demo.fma").string();

  Run r = run("build --align " + (tmp.path / "align.txt").string() +
                  " --rate 4 --out " + idx,
              tmp.path);
  CHECK(r.rc == 0);
  CHECK(fs::exists(idx));

  r = run("search --index " + idx + " --pattern aaacc", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out == "1\t6\n");

  r = run("search --index " + idx + " --pattern ac --count", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out == "4\n");

  r = run("search --index " + idx + " --pattern ac", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out == "1\t8\n2\t9\n3\t9\n4\t6\n");

  r = run("search --index " + idx + " --pattern ttttt", tmp.path);
  CHECK(r.rc == 1);  // pattern absent
  CHECK(r.out.empty());

  r = run("extract --index " + idx + " --string 3 --from 5 --to 9", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out == "tataa\n");

  r = run("stats --index " + idx, tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out.find("entries:        24\n") != std::string::npos);
  CHECK(r.out.find("strings:        4\n") != std::string::npos);
  CHECK(r.out.find("core_bytes:") != std::string::npos);
  CHECK(r.out.find("total_bytes:") != std::string::npos);

  r = run("validate --index " + idx + " --align " + (tmp.path / "align.txt").string(),
          tmp.path);
  CHECK(r.rc == 0);
}

TEST_CASE("build from a reference and a variant directory") {
  TempDir tmp;
  write_file(tmp.path / "ref.txt", "ACGT\n");
  fs::create_directories(tmp.path / "vars");
  write_file(tmp.path / "vars" / "a_sample.tsv", "2\tC\t.\n");
  write_file(tmp.path / "vars" / "b_sample.tsv", "");
  const std::string idx = (tmp.path / "vars.fma").string();

  Run r = run("build --ref " + (tmp.path / "ref.txt").string() + " --variants " +
                  (tmp.path / "vars").string() + " --rate 2 --out " + idx,
              tmp.path);
  CHECK(r.rc == 0);

  r = run("search --index " + idx + " --pattern GT", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out == "1\t3\n2\t4\n");  // sample order = filename order

  r = run("extract --index " + idx + " --string 1 --from 1 --to 5", tmp.path);
  CHECK(r.out == "$AGT#\n");

  r = run("validate --index " + idx + " --ref " + (tmp.path / "ref.txt").string() +
              " --variants " + (tmp.path / "vars").string(),
          tmp.path);
  CHECK(r.rc == 0);
}

TEST_CASE("usage errors exit with 2") {
  TempDir tmp;
  write_file(tmp.path / "align.txt", kAlignText);
  const std::string idx = (tmp.path / "demo.fma").string();
  REQUIRE(run("build --align " + (tmp.path / "align.txt").string() + " --out " + idx,
              tmp.path)
              .rc == 0);

  CHECK(run("search --index " + idx, tmp.path).rc == 2);  // missing --pattern
  CHECK(run("bogus-subcommand", tmp.path).rc == 2);
  CHECK(run("build --out x.fma", tmp.path).rc == 2);  // no input source
  CHECK(run("extract --index " + idx + " --string 9 --from 1 --to 2", tmp.path).rc == 2);
  CHECK(run("extract --index " + idx + " --string 1 --from 7 --to 3", tmp.path).rc == 2);
  CHECK(run("search --index " + idx + " --pattern '$c'", tmp.path).rc == 2);
}

TEST_CASE("malformed input exits with 3") {
  TempDir tmp;
  write_file(tmp.path / "broken.fma", "not an index image");
  CHECK(run("stats --index " + (tmp.path / "broken.fma").string(), tmp.path).rc == 3);

  write_file(tmp.path / "bad_align.txt", "#FMA-ALIGN 1\nALPHABET a\nR 1\nA a\n");
  CHECK(run("build --align " + (tmp.path / "bad_align.txt").string() + " --out " +
                (tmp.path / "x.fma").string(),
            tmp.path)
            .rc == 3);

  // an index that does not match its claimed source
  write_file(tmp.path / "align.txt", kAlignText);
  const std::string idx = (tmp.path / "demo.fma").string();
  REQUIRE(run("build --align " + (tmp.path / "align.txt").string() + " --out " + idx,
              tmp.path)
              .rc == 0);
  std::string other = kAlignText;
  const size_t at = other.find("D 1 1 ca");
  other.replace(at, 8, "D 1 1 tt");
  write_file(tmp.path / "other.txt", other);
  CHECK(run("validate --index " + idx + " --align " + (tmp.path / "other.txt").string(),
            tmp.path)
            .rc == 3);
}

TEST_CASE("help output") {
  TempDir tmp;
  Run r = run("--help", tmp.path);
  CHECK(r.rc == 0);
  CHECK(r.out.find("build") != std::string::npos);
  CHECK(r.out.find("search") != std::string::npos);
}

}  // TEST_SUITE
