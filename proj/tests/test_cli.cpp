#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "steinerq/cli.hpp"
#include "steinerq/free_model.hpp"

using namespace steinerq;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return RunResult{code, out.str(), err.str()};
}

// a file on disk holding the given design text, removed on destruction
struct DesignFile {
  explicit DesignFile(const std::string& text) {
    path = (std::filesystem::temp_directory_path() /
            ("steinerq_cli_test_" + std::to_string(counter++) + ".psts"))
               .string();
    std::ofstream f(path);
    f << text;
  }
  ~DesignFile() { std::remove(path.c_str()); }
  std::string path;
  static int counter;
};

int DesignFile::counter = 0;

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("documented examples") {
  RunResult r = run({"reduce", "(x1*x2)*x2"});
  CHECK(r.code == 0);
  CHECK(r.out == "reduced: x1\n");
  CHECK(r.err.empty());

  DesignFile fano{std::string(fano_fixture())};
  r = run({"delta", "--file", fano.path});
  CHECK(r.code == 0);
  CHECK(r.out == "delta: 0\n");

  r = run({"tame", "--gens", "3", "--images", "x2,x1,x3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "factors: 3\n"));
  CHECK(contains(r.out, "factor: pivot=1 shift=x2\n"));
  CHECK(contains(r.out, "factor: pivot=2 shift=x1\n"));
  CHECK(contains(r.out, "verified: yes\n"));
}

TEST_CASE("term subcommands") {
  RunResult r = run({"parse", " ( x1 * x2 ) "});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "term: (x1*x2)\n"));
  CHECK(contains(r.out, "length: 2\n"));
  CHECK(contains(r.out, "rank: 1\n"));
  CHECK(contains(r.out, "max-var: 2\n"));

  CHECK(run({"canon", "x2*x1"}).out == "canonical: (x1*x2)\n");
  CHECK(run({"equiv", "x1*(x2*x3)", "(x3*x2)*x1"}).out == "equivalent: yes\n");
  CHECK(run({"equiv", "x1", "x2"}).out == "equivalent: no\n");
  CHECK(run({"rank", "(x1*x2)*x3"}).out == "rank: 2\n");
  CHECK(run({"reduced", "x1*x1"}).out == "reduced: no\n");
  CHECK(run({"reduced", "x1*x2"}).out == "reduced: yes\n");
  CHECK(run({"reduce", "(x1*x2)*(x1*x2)"}).out == "reduced: (x1*x2)\n");

  r = run({"enumerate", "2", "--rank-bound", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "count: 3\n"));
  CHECK(contains(r.out, "terms: x1 x2 (x1*x2)\n"));

  r = run({"--format", "lines", "enumerate", "2", "--rank-bound", "1"});
  CHECK(contains(r.out, "term: x1\n"));
  CHECK(contains(r.out, "term: x2\n"));
  CHECK(contains(r.out, "term: (x1*x2)\n"));
}

TEST_CASE("free model subcommands") {
  CHECK(run({"mul", "x1*x2", "x2"}).out == "product: x1\n");
  CHECK(run({"mul", "--gens", "3", "x1", "x2"}).out == "product: (x1*x2)\n");

  RunResult r = run({"levels", "3", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "ranks: 3 3 6\ncumulative: 3 6 12\nagree: yes\n");

  r = run({"levels", "1", "5"});
  CHECK(r.out == "ranks: 1 0 0 0 0 0\ncumulative: 1 1 1 1 1 1\nagree: yes\n");

  r = run({"levels", "2", "0"});
  CHECK(r.out == "ranks: 2\ncumulative: 2\nagree: yes\n");

  CHECK(run({"level-of", "x1"}).out == "level: 0\n");
  CHECK(run({"level-of", "--gens", "3", "(x1*x2)*x3"}).out == "level: 2\n");

  r = run({"closure", "x1", "x2"});
  CHECK(contains(r.out, "size: 3\n"));
  CHECK(contains(r.out, "saturated: yes\n"));
  CHECK(contains(r.out, "elements: x1 x2 (x1*x2)\n"));

  r = run({"closure", "--gens", "3", "--length-cap", "2", "x1", "x2", "x3"});
  CHECK(contains(r.out, "cap: 2\n"));
  CHECK(contains(r.out, "size: 6\n"));
  CHECK(contains(r.out, "saturated: no\n"));

  r = run({"independent", "x1", "x1*x2", "x2"});
  CHECK(contains(r.out, "dependent: yes\n"));
  CHECK(contains(r.out, "first: x3\n"));
  CHECK(contains(r.out, "second: (x1*x2)\n"));

  r = run({"independent", "--gens", "3", "x1", "x2", "x3"});
  CHECK(contains(r.out, "dependent: no\n"));
  CHECK(contains(r.out, "rank-bound: 3\n"));
}

TEST_CASE("homomorphism subcommand") {
  CHECK(run({"hom", "--gens", "2", "--images", "x2*x3,x1", "x1*x2"}).out ==
        "image: (x1*(x2*x3))\n");

  RunResult r = run({"hom", "--gens", "2", "--points", "1,2", "--builtin", "7", "x1*x2"});
  CHECK(r.code == 0);
  CHECK(r.out == "image: 3\n");

  DesignFile fano{std::string(fano_fixture())};
  r = run({"hom", "--gens", "3", "--points", "1,2,4", "--file", fano.path, "(x1*x2)*x3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "image: "));

  r = run({"hom", "--gens", "2", "x1"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: "));
}

TEST_CASE("design subcommands") {
  RunResult r = run({"validate", "--builtin", "7"});
  CHECK(r.out == "points: 7\nblocks: 7\ndelta: 0\ncomplete: yes\n");

  CHECK(run({"delta", "--builtin", "9"}).out == "delta: -3\n");

  r = run({"hf-order", "--builtin", "7"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "confined: yes\n"));
  CHECK(contains(r.out, "witness: 1 2 3 4 5 6 7\n"));

  DesignFile single{"points: a b c d\nblock: a b c\n"};
  r = run({"hf-order", "--file", single.path});
  CHECK(contains(r.out, "confined: no\n"));
  CHECK(contains(r.out, "ordering: "));

  r = run({"hf-base", "--file", single.path});
  CHECK(contains(r.out, "size: 0\n"));

  r = run({"hf-base", "--builtin", "9"});
  CHECK(contains(r.out, "size: 9\n"));

  r = run({"export-levels", "--gens", "3", "--depth", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "points: x1 x2 x3 (x1*x2) (x1*x3) (x2*x3)\n"));
  CHECK(contains(r.out, "block: x1 x2 (x1*x2)\n"));

  // the exported text round-trips through the design commands
  DesignFile exported{r.out};
  r = run({"delta", "--file", exported.path});
  CHECK(r.out == "delta: 3\n");
}

TEST_CASE("occurrence and endomorphism subcommands") {
  RunResult r = run({"occ", "(x1*x3)*(x2*x3)", "3"});
  CHECK(r.out == "variable: 3\ncount: 2\nsingle-path: no\n");

  r = run({"occ", "(x3*x1)*x2", "3"});
  CHECK(r.out == "variable: 3\ncount: 1\nsingle-path: yes\n");

  r = run({"invert", "(x3*x1)*x2"});
  CHECK(r.out == "y: 3\nz: 4\ninverse: (x1*(x2*x4))\n");

  r = run({"invert", "--y", "1", "--z", "5", "x2*x1"});
  CHECK(r.out == "y: 1\nz: 5\ninverse: (x2*x5)\n");

  r = run({"classify", "--gens", "3", "(x1*x3)*x2"});
  CHECK(r.out == "class: automorphism\ninverse: (x1*(x2*x3))\n");

  r = run({"classify", "--gens", "3", "(x1*x3)*(x2*x3)"});
  CHECK(r.out == "class: embedding\nexcluded: x3\n");

  r = run({"classify", "--gens", "3", "x1*x2"});
  CHECK(r.out == "class: not-injective\nfirst: x3\nsecond: (x1*x2)\n");

  CHECK(run({"apply", "--gens", "3", "--images", "x2,x1,x3", "x1*x3"}).out ==
        "image: (x2*x3)\n");

  r = run({"inject-check", "(x1*x3)*(x2*x3)"});
  CHECK(r.out == "occurrences: 2\ninjective: yes\nbound: 3\n");

  r = run({"inject-check", "--y", "2", "(x1*x2)*x3"});
  CHECK(r.out == "occurrences: 1\ninjective: yes\nbound: unbounded\n");
}

TEST_CASE("automorphism subcommands") {
  RunResult r = run({"elementary", "--gens", "3", "--pivot", "3", "--shift", "x1*x2"});
  CHECK(r.out == "pivot: 3\nshift: (x1*x2)\nimages: x1 x2 (x3*(x1*x2))\n");

  r = run({"irreducible", "--gens", "2", "--images", "x1*x2,x2"});
  CHECK(r.out == "irreducible: no\nindex: 1\ncombination: x2\nfactor: x1\n");

  CHECK(run({"irreducible", "--gens", "2", "--images", "x2,x1"}).out == "irreducible: yes\n");

  r = run({"preserves", "--gens", "2", "--images", "x1*x2,x2"});
  CHECK(r.out ==
        "rank-bound: 3\npreserved: no\ninput: (x1*x2)\nsubstituted: ((x1*x2)*x2)\n");

  CHECK(run({"preserves", "--gens", "3", "--images", "x2,x3,x1"}).out ==
        "rank-bound: 3\npreserved: yes\n");

  r = run({"tame", "--gens", "3", "--images", "x1,x2,(x1*x2)*x3"});
  CHECK(contains(r.out, "factors: 1\n"));
  CHECK(contains(r.out, "factor: pivot=3 shift=(x1*x2)\n"));
  CHECK(contains(r.out, "verified: yes\n"));

  CHECK(run({"verify-tame", "--gens", "3", "--images", "x2,x1,x3", "--factors",
             "1:x2;2:x1;1:x2"})
            .out == "verified: yes\n");
  CHECK(run({"verify-tame", "--gens", "3", "--images", "x2,x1,x3", "--factors", "1:x2"})
            .out == "verified: no\n");
}

TEST_CASE("exit codes and error channels") {
  // usage errors: exit 2, message on the error stream
  RunResult r = run({});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "usage error: "));

  r = run({"--bogus", "reduce", "x1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "usage error: "));

  r = run({"--format", "csv", "reduce", "x1"});
  CHECK(r.code == 2);

  r = run({"reduce"});
  CHECK(r.code == 2);

  // domain errors: exit 1, `error:` on the error stream, nothing on out
  r = run({"reduce", "x1**"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "error: "));

  r = run({"delta", "--file", "/nonexistent/no.psts"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: cannot open file"));

  r = run({"delta", "--builtin", "8"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: "));

  r = run({"delta"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: a design is required"));

  r = run({"invert", "x1*x1"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: "));

  r = run({"tame", "--gens", "3", "--images", "x1,x2,(x1*x3)*(x2*x3)"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: the images do not define an automorphism"));

  r = run({"verify-tame", "--gens", "2", "--images", "x1,x2", "--factors", "nonsense"});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "error: factor must look like pivot:shift"));

  // a tight closure cap surfaces as a domain error, not a crash
  r = run({"--length-cap", "1", "closure", "x1", "x2"});
  CHECK(r.code == 0);  // capped closures report saturated: no instead of failing
  CHECK(contains(r.out, "saturated: no\n"));

  // help: exit 0, text on the primary stream
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "Usage"));
  CHECK(r.err.empty());

  r = run({"reduce", "--help"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "term"));
}

TEST_CASE("list formats") {
  RunResult plain = run({"hf-base", "--builtin", "7"});
  CHECK(contains(plain.out, "base: 1 2 3 4 5 6 7\n"));

  RunResult lines = run({"--format", "lines", "hf-base", "--builtin", "7"});
  CHECK(contains(lines.out, "point: 1\n"));
  CHECK(contains(lines.out, "point: 7\n"));
  CHECK(!contains(lines.out, "base:"));

  RunResult closure_lines = run({"--format", "lines", "closure", "x1", "x2"});
  CHECK(contains(closure_lines.out, "element: x1\n"));
  CHECK(contains(closure_lines.out, "element: (x1*x2)\n"));

  // global flags may also follow the subcommand
  RunResult after = run({"closure", "x1", "x2", "--format", "lines"});
  CHECK(after.out == closure_lines.out);
}
