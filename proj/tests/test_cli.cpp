#include <cstdio>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "certnet/cli.hpp"

using namespace certnet;

namespace {

std::string fixture(const char* name) {
  return std::string(CERTNET_DATA_DIR) + "/" + name;
}

CommandResult run(std::vector<std::string> args) {
  return run_command(args);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "certnet_cli_test_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const std::string kDiamondJointTsv =
    "a\tb\tc\td\tdegree\n"
    "a\tb\tc\td\t0.2\n"
    "a\tb\tc\t!d\t0.3\n"
    "a\tb\t!c\td\t0.1\n"
    "a\tb\t!c\t!d\t0.1\n"
    "a\t!b\tc\td\t0.25\n"
    "a\t!b\tc\t!d\t0.2\n"
    "a\t!b\t!c\td\t0.1\n"
    "a\t!b\t!c\t!d\t0.1\n"
    "!a\tb\tc\td\t0.1\n"
    "!a\tb\tc\t!d\t0.1\n"
    "!a\tb\t!c\td\t0.1\n"
    "!a\tb\t!c\t!d\t0.1\n"
    "!a\t!b\tc\td\t0\n"
    "!a\t!b\tc\t!d\t0\n"
    "!a\t!b\t!c\td\t0\n"
    "!a\t!b\t!c\t!d\t0\n";

}  // namespace

TEST_CASE("validate: permissive passes, strict names the offending node") {
  const CommandResult permissive = run({"validate", fixture("diamond.cn")});
  CHECK(permissive.exit_code == 0);
  CHECK(permissive.out == "ok (permissive)\n");

  const CommandResult strict =
      run({"validate", "--strict", fixture("diamond.cn")});
  CHECK(strict.exit_code == 2);
  CHECK(strict.out.find("node a: max(0.6, 0.1) != 1") != std::string::npos);

  const CommandResult ok = run({"validate", "--strict", fixture("diamond_strict.cn")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok (strict)\n");
}

TEST_CASE("validate: malformed files exit 1") {
  TempFile bad("network x\nvar a\ncpt a { a: oops }\n");
  const CommandResult result = run({"validate", bad.path});
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("line 3") != std::string::npos);

  const CommandResult missing = run({"validate", "no_such_file.cn"});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("joint prints the distribution in table order") {
  const CommandResult result = run({"joint", fixture("diamond.cn")});
  CHECK(result.exit_code == 0);
  CHECK(result.out == kDiamondJointTsv);
  // the fixture is not strict, so loading warns
  CHECK(result.err.find("not strict") != std::string::npos);

  const CommandResult strict = run({"joint", "--strict", fixture("diamond.cn")});
  CHECK(strict.exit_code == 2);
  CHECK(strict.out.empty());
}

TEST_CASE("joint of a single-variable network") {
  TempFile net("network unit\nvar a\ncpt a { a: 1; !a: 0 }\n");
  const CommandResult result = run({"joint", net.path});
  CHECK(result.exit_code == 0);
  CHECK(result.out == "a\tdegree\na\t1\n!a\t0\n");
  CHECK(result.err.empty());  // strict, so no warning
}

TEST_CASE("joint of a fuzzy network prints fuzzy degrees") {
  TempFile net(
      "network f\nvar a\n"
      "cpt a { a: tri(0.2, 0.5, 0.8); !a: 1 }\n");
  const CommandResult result = run({"joint", net.path});
  CHECK(result.exit_code == 0);
  CHECK(result.out == "a\tdegree\na\ttri(0.2, 0.5, 0.8)\n!a\t1\n");
}

TEST_CASE("query prints possibility and necessity") {
  // possibility: max(0.2, 0.3) over the two a b c worlds;
  // necessity: 1 - 0.25, the largest degree outside a & b & c
  const CommandResult conj =
      run({"query", fixture("diamond.cn"), "--formula", "a & b & c"});
  CHECK(conj.exit_code == 0);
  CHECK(conj.out == "possibility: 0.3\nnecessity: 0.75\n");

  const CommandResult atom =
      run({"query", fixture("diamond.cn"), "--formula", "a"});
  CHECK(atom.out == "possibility: 0.3\nnecessity: 0.9\n");

  const CommandResult taut =
      run({"query", fixture("diamond.cn"), "--formula", "true"});
  CHECK(taut.out == "possibility: 0.3\nnecessity: 1\n");

  const CommandResult bad =
      run({"query", fixture("diamond.cn"), "--formula", "a & (b"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("offset 6") != std::string::npos);
}

TEST_CASE("compile emits the kb file with provenance") {
  const CommandResult result = run({"compile", fixture("diamond_strict.cn")});
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "kb diamond_strict\n"
        "vars a b c d\n"
        "0.9 : a  # from a\n"
        "0.8 : !b | a  # from b\n"
        "0.75 : b | !a  # from b\n"
        "0.8 : !c | a  # from c\n"
        "0.9 : c | !a  # from c\n"
        "0.9 : !d | !b | c  # from d\n"
        "0.6 : d | !b | !c  # from d\n"
        "0.8 : d | b | !c  # from d\n"
        "0.8 : d | b | c  # from d\n");
  CHECK(result.err.empty());
}

TEST_CASE("recover inverts compile for the strict fixture") {
  const CommandResult compiled = run({"compile", fixture("diamond_strict.cn"),
                                      "--output", "compiled_strict.kb"});
  REQUIRE(compiled.exit_code == 0);
  CHECK(compiled.out.empty());

  const CommandResult recovered = run({"recover", "compiled_strict.kb"});
  std::remove("compiled_strict.kb");
  CHECK(recovered.exit_code == 0);

  const CommandResult joint = run({"joint", fixture("diamond_strict.cn")});
  CHECK(recovered.out == joint.out);
}

TEST_CASE("roundtrip reports identity per world") {
  const CommandResult strict = run({"roundtrip", fixture("diamond_strict.cn")});
  CHECK(strict.exit_code == 0);
  CHECK(strict.out == "identical (16 worlds)\n");

  // holds for the non-strict fixture too: one clause per table entry
  const CommandResult permissive = run({"roundtrip", fixture("diamond.cn")});
  CHECK(permissive.exit_code == 0);
  CHECK(permissive.out == "identical (16 worlds)\n");
}

TEST_CASE("defuzzify writes a crisp network equivalent to the crisp fixture") {
  const CommandResult result =
      run({"defuzzify", fixture("diamond_fuzzy.cn"), "--output", "defuzzified.cn"});
  REQUIRE(result.exit_code == 0);

  const CommandResult joint = run({"joint", "defuzzified.cn"});
  std::remove("defuzzified.cn");
  CHECK(joint.out == kDiamondJointTsv);

  // crisp input passes through unchanged semantically
  const CommandResult crisp = run({"defuzzify", fixture("diamond.cn")});
  CHECK(crisp.exit_code == 0);
  CHECK(crisp.out.find("network diamond") == 0);
  CHECK(crisp.out.find("tri(") == std::string::npos);
}

TEST_CASE("subsumed lists dominated lines") {
  const CommandResult result = run({"subsumed", fixture("duplicates.kb")});
  CHECK(result.exit_code == 0);
  CHECK(result.out == "line 4 subsumed\n");

  TempFile lean("kb lean\nvars a b\n0.5 : a\n0.7 : b\n");
  const CommandResult none = run({"subsumed", lean.path});
  CHECK(none.exit_code == 0);
  CHECK(none.out.empty());
}

TEST_CASE("recover rejects fuzzy weights") {
  TempFile fuzzy("kb f\nvars a\ntri(0.1, 0.2, 0.3) : a\n");
  const CommandResult result = run({"recover", fuzzy.path});
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("fuzzy weights") != std::string::npos);
}

TEST_CASE("max-vars guard is enforced and overridable") {
  std::string vars;
  std::string cpts;
  for (int i = 0; i < 21; ++i) {
    const std::string name = "v" + std::to_string(i);
    vars += " " + name;
    cpts += "cpt " + name + " { " + name + ": 1; !" + name + ": 0 }\n";
  }
  TempFile big("network big\nvar" + vars + "\n" + cpts);

  const CommandResult refused = run({"joint", big.path});
  CHECK(refused.exit_code == 1);
  CHECK(refused.err.find("cap is 20") != std::string::npos);

  // the cap moves in both directions
  TempFile small(
      "network small\nvar a b c\n"
      "cpt a { a: 1; !a: 0 }\ncpt b { b: 1; !b: 0 }\ncpt c { c: 1; !c: 0 }\n");
  CHECK(run({"joint", small.path, "--max-vars", "2"}).exit_code == 1);
  const CommandResult forced = run({"joint", small.path, "--max-vars", "3"});
  CHECK(forced.exit_code == 0);
  CHECK(forced.out.find("a\tb\tc\tdegree\n") == 0);
}

TEST_CASE("usage errors exit 1, help exits 0") {
  CHECK(run({"joint"}).exit_code == 1);
  CHECK(run({"frobnicate", "x"}).exit_code == 1);
  CHECK(run({}).exit_code == 1);
  CHECK(run({"--strict", "--permissive", "validate", fixture("diamond.cn")})
            .exit_code == 1);

  const CommandResult help = run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("certnet") != std::string::npos);
}
