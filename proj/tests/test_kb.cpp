#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "certnet/io.hpp"
#include "certnet/kb.hpp"
#include "generators.hpp"

using namespace certnet;

namespace {

Degree deg(const char* text) { return Degree::parse(text); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CertainNetwork load_fixture(const char* name) {
  return to_crisp(
      parse_network(read_file(std::string(CERTNET_DATA_DIR) + "/" + name)));
}

KnowledgeBase kb_of(const Vocabulary& vocab,
                    std::initializer_list<std::pair<const char*, const char*>>
                        weighted_formulas) {
  KnowledgeBase kb{"test", vocab, {}};
  for (const auto& [weight, formula] : weighted_formulas) {
    kb.formulas.push_back({parse_formula(formula, vocab), deg(weight), ""});
  }
  return kb;
}

}  // namespace

TEST_CASE("compiling a root emits one unit clause per uncertain literal") {
  const CertainNetwork net = load_fixture("diamond_strict.cn");
  const KnowledgeBase kb = compile_node(net, net.vocabulary.index_of("a"));
  REQUIRE(kb.formulas.size() == 1);
  CHECK(format_formula(kb.formulas[0].formula, net.vocabulary) == "a");
  CHECK(kb.formulas[0].weight == deg("0.9"));
  CHECK(kb.formulas[0].source == "a");
}

TEST_CASE("child entries compile to the negated conjunction clause") {
  const CertainNetwork net = load_fixture("diamond_strict.cn");
  const KnowledgeBase kb = compile_node(net, net.vocabulary.index_of("b"));
  // N(b | !a) = 0.2 excludes the world class b & !a via (!b | a, 0.8)
  REQUIRE(kb.formulas.size() == 2);
  CHECK(format_formula(kb.formulas[0].formula, net.vocabulary) == "!b | a");
  CHECK(kb.formulas[0].weight == deg("0.8"));
  CHECK(format_formula(kb.formulas[1].formula, net.vocabulary) == "b | !a");
  CHECK(kb.formulas[1].weight == deg("0.75"));
}

TEST_CASE("strict diamond compiles to the expected clause set") {
  const CertainNetwork net = load_fixture("diamond_strict.cn");
  const KnowledgeBase kb = compile_network(net);

  const KnowledgeBase expected = to_crisp(parse_fuzzy_kb(
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
      "0.8 : d | b | c  # from d\n"));
  CHECK(kb == expected);

  // every compiled formula is a clause: complement of the node literal
  // joined with the negated parent literals
  for (const WeightedFormula& wf : kb.formulas) {
    const auto clause = Clause::from_formula(wf.formula);
    REQUIRE(clause.has_value());
    CHECK_FALSE(clause->is_tautology());
    CHECK_FALSE(wf.weight.is_zero());
  }
}

TEST_CASE("fully certain networks compile to an empty kb") {
  CertainNetwork net;
  net.name = "sure";
  net.vocabulary = Vocabulary({"a", "b"});
  net.tables.resize(2);
  net.tables[0] = {0, {}, {{true, ParentContext::assignment({}), deg("1")},
                           {false, ParentContext::assignment({}), deg("1")}}};
  net.tables[1] = {1, {0}, {{true, ParentContext::else_context(), deg("1")},
                            {false, ParentContext::else_context(), deg("1")}}};
  CHECK(compile_network(net).formulas.empty());
}

TEST_CASE("recovery grades worlds by their worst violated formula") {
  const Vocabulary va({"a"});
  const Distribution d =
      recover_distribution(kb_of(va, {{"0.9", "a"}}));
  CHECK(d.at(World({true})) == deg("1"));
  CHECK(d.at(World({false})) == deg("0.1"));

  const Vocabulary vab({"a", "b"});
  const Distribution e =
      recover_distribution(kb_of(vab, {{"0.4", "a"}, {"0.7", "b"}}));
  CHECK(e.at(World({false, false})) == deg("0.3"));
  CHECK(e.at(World({true, false})) == deg("0.3"));
  CHECK(e.at(World({false, true})) == deg("0.6"));
  CHECK(e.at(World({true, true})) == deg("1"));

  const Distribution empty = recover_distribution(KnowledgeBase{"e", vab, {}});
  for (std::size_t r = 0; r < empty.world_count(); ++r) {
    CHECK(empty.at_rank(r) == deg("1"));
  }
}

TEST_CASE("min-max form coincides with direct recovery") {
  const Vocabulary vab({"a", "b"});
  const KnowledgeBase certain = kb_of(vab, {{"1", "a -> b"}});
  const Distribution d = minmax_distribution(certain);
  CHECK(d.at(World({true, true})) == deg("1"));
  CHECK(d.at(World({true, false})) == deg("0"));
  CHECK(d.at(World({false, false})) == deg("1"));

  std::mt19937 rng(1415);
  for (int i = 0; i < 80; ++i) {
    const KnowledgeBase kb = testgen::random_kb(rng);
    CHECK(equivalent(recover_distribution(kb), minmax_distribution(kb)));
  }
}

TEST_CASE("round trip: strict networks recover their chain-rule joint") {
  const CertainNetwork strict = load_fixture("diamond_strict.cn");
  REQUIRE(validate(strict, ValidationLevel::Strict).ok());
  CHECK(equivalent(recover_distribution(compile_network(strict)),
                   joint_distribution(strict)));

  std::mt19937 rng(6283);
  for (int i = 0; i < 50; ++i) {
    const CertainNetwork net = testgen::random_network(rng);
    CHECK(equivalent(recover_distribution(compile_network(net)),
                     joint_distribution(net)));
  }
}

TEST_CASE("recovery reproduces the joint even without strictness") {
  // One clause per table entry means a world violates at most one clause
  // per node, so recovery computes the same min the chain rule does. The
  // strict-network round trip is the special case the acceptance suite
  // pins; non-strict networks merely recover a sub-normalized joint.
  const CertainNetwork net = load_fixture("diamond.cn");
  REQUIRE_FALSE(validate(net, ValidationLevel::Strict).ok());
  CHECK(equivalent(recover_distribution(compile_network(net)),
                   joint_distribution(net)));

  std::mt19937 rng(8642);
  for (int i = 0; i < 40; ++i) {
    const CertainNetwork random = testgen::random_network(rng, 6, 3, false);
    CHECK(equivalent(recover_distribution(compile_network(random)),
                     joint_distribution(random)));
  }
}

TEST_CASE("subsumption detection") {
  const Vocabulary vab({"a", "b"});

  const KnowledgeBase dominated = kb_of(vab, {{"0.5", "a"}, {"0.3", "a"}});
  CHECK(is_subsumed(dominated, 1));
  CHECK_FALSE(is_subsumed(dominated, 0));

  CHECK_FALSE(is_subsumed(kb_of(vab, {{"0.5", "a"}}), 0));

  const KnowledgeBase weaker = kb_of(vab, {{"0.6", "a"}, {"0.6", "a | b"}});
  CHECK(is_subsumed(weaker, 1));
  CHECK_FALSE(is_subsumed(weaker, 0));

  CHECK_THROWS_AS(is_subsumed(weaker, 2), domain_error);
}

TEST_CASE("equivalence follows definition 1") {
  const Vocabulary vab({"a", "b"});
  const KnowledgeBase kb = kb_of(vab, {{"0.5", "a"}, {"0.3", "a"}});
  const KnowledgeBase trimmed = kb_of(vab, {{"0.5", "a"}});
  CHECK(equivalent_kb(kb, trimmed));

  CHECK_FALSE(equivalent_kb(kb_of(vab, {{"0.5", "a"}}),
                            kb_of(vab, {{"0.6", "a"}})));

  CHECK_THROWS_AS(equivalent_kb(kb, kb_of(Vocabulary({"x", "y"}), {})),
                  domain_error);
}

TEST_CASE("recovery is invariant under reordering and subsumed removal") {
  std::mt19937 rng(2718);
  for (int i = 0; i < 40; ++i) {
    KnowledgeBase kb = testgen::random_kb(rng, 4, 8);
    const Distribution base = recover_distribution(kb);

    KnowledgeBase shuffled = kb;
    std::shuffle(shuffled.formulas.begin(), shuffled.formulas.end(), rng);
    CHECK(equivalent(recover_distribution(shuffled), base));

    for (std::size_t f = 0; f < kb.formulas.size(); ++f) {
      if (is_subsumed(kb, f)) {
        KnowledgeBase without = kb;
        without.formulas.erase(without.formulas.begin() + f);
        CHECK(equivalent(recover_distribution(without), base));
      }
    }
  }
}

TEST_CASE("per-node slices concatenated in any order stay equivalent") {
  const CertainNetwork net = load_fixture("diamond_strict.cn");
  const KnowledgeBase whole = compile_network(net);
  KnowledgeBase reversed{whole.name, whole.vocabulary, {}};
  for (std::size_t node = net.vocabulary.size(); node-- > 0;) {
    const KnowledgeBase slice = compile_node(net, node);
    reversed.formulas.insert(reversed.formulas.end(), slice.formulas.begin(),
                             slice.formulas.end());
  }
  CHECK(equivalent_kb(whole, reversed));
}

TEST_CASE("fuzzy compilation complements the entries") {
  FuzzyCertainNetwork net;
  net.name = "f";
  net.vocabulary = Vocabulary({"a"});
  net.tables = {{0, {}, {{true, ParentContext::assignment({}),
                          FuzzyDegree::triangular(deg("0.1"), deg("0.3"), deg("0.5"))},
                         {false, ParentContext::assignment({}),
                          FuzzyDegree::crisp(Degree::one())}}}};
  const FuzzyKnowledgeBase fkb = compile_fuzzy(net);
  REQUIRE(fkb.formulas.size() == 1);
  CHECK(format_formula(fkb.formulas[0].formula, net.vocabulary) == "!a");
  CHECK(fkb.formulas[0].weight ==
        FuzzyDegree::triangular(deg("0.5"), deg("0.7"), deg("0.9")));

  const KnowledgeBase crisp = crisp_projection(fkb);
  REQUIRE(crisp.formulas.size() == 1);
  CHECK(crisp.formulas[0].weight == deg("0.7"));

  // a fully certain fuzzy entry claims nothing
  net.tables[0].rows[0].degree = FuzzyDegree::triangular(deg("1"), deg("1"), deg("1"));
  CHECK(compile_fuzzy(net).formulas.empty());
}

TEST_CASE("fuzzy compilation reduces to crisp compilation on degenerate nets") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 30; ++i) {
    const CertainNetwork crisp = testgen::random_network(rng, 5, 2, false);
    const FuzzyKnowledgeBase fkb = compile_fuzzy(embed_crisp(crisp));
    CHECK(crisp_projection(fkb) == compile_network(crisp));
    CHECK(to_crisp(fkb) == compile_network(crisp));
  }
}

TEST_CASE("crisp projection commutes with defuzzify-then-compile") {
  std::mt19937 rng(404);
  for (int i = 0; i < 40; ++i) {
    const FuzzyCertainNetwork fuzzy = testgen::random_fuzzy_network(rng);
    if (!validate(fuzzy, ValidationLevel::Permissive).ok()) continue;
    CHECK(crisp_projection(compile_fuzzy(fuzzy)) ==
          compile_network(defuzzify_network(fuzzy)));
  }
}

TEST_CASE("kb files round-trip through print and parse") {
  std::mt19937 rng(7777);
  for (int i = 0; i < 150; ++i) {
    const KnowledgeBase kb = testgen::random_kb(rng);
    CHECK(parse_kb(print_kb(kb)) == kb);
  }
  // compiled kbs keep their provenance comments
  const KnowledgeBase compiled = compile_network(load_fixture("diamond_strict.cn"));
  CHECK(parse_kb(print_kb(compiled)) == compiled);
}

TEST_CASE("kb loader records line numbers and skips zero weights") {
  std::vector<std::string> warnings;
  const FuzzyKnowledgeBase kb = parse_fuzzy_kb(
      "# comment\n"
      "kb demo\n"
      "vars a b\n"
      "\n"
      "0.5 : a | b\n"
      "0 : b\n"
      "tri(0.2, 0.5, 0.8) : !a\n",
      &warnings);
  REQUIRE(kb.formulas.size() == 2);
  CHECK(kb.formulas[0].line == 5);
  CHECK(kb.formulas[1].line == 7);
  CHECK(kb.formulas[1].weight ==
        FuzzyDegree::triangular(deg("0.2"), deg("0.5"), deg("0.8")));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "line 6: zero-weight formula ignored");

  CHECK_FALSE(is_crisp(kb));
  CHECK_THROWS_AS(to_crisp(kb), domain_error);
}

TEST_CASE("mutated kb text fails with typed errors only") {
  std::mt19937 rng(24680);
  const std::string base = print_kb(testgen::random_kb(rng, 4, 6));
  for (int i = 0; i < 400; ++i) {
    std::string text = base;
    for (int e = testgen::pick(rng, 1, 4); e > 0 && !text.empty(); --e) {
      const int pos = testgen::pick(rng, 0, int(text.size()) - 1);
      switch (testgen::pick(rng, 0, 2)) {
        case 0:
          text[pos] = char(testgen::pick(rng, 32, 126));
          break;
        case 1:
          text.erase(pos, 1);
          break;
        default:
          text.insert(pos, 1, char(testgen::pick(rng, 32, 126)));
          break;
      }
    }
    try {
      (void)parse_fuzzy_kb(text);
    } catch (const parse_error&) {
    } catch (const domain_error&) {
    }
  }
  SUCCEED("no mutation escaped the parser's error types");
}

TEST_CASE("kb file errors carry line numbers") {
  const auto fails_with = [](const std::string& text, const std::string& what) {
    try {
      parse_fuzzy_kb(text);
      FAIL("expected parse_error for: " + text);
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find(what) != std::string::npos);
    }
  };
  fails_with("vars a\n", "must start with 'kb");
  fails_with("kb x\n0.5 : a\n", "expected 'vars");
  fails_with("kb x\nvars a\n0.5 a\n", "expected '<weight> : <formula>'");
  fails_with("kb x\nvars a\n0.5 : q\n", "unknown atom: q");
  fails_with("kb x\nvars a\nbogus : a\n", "expected a degree");
  fails_with("kb x\nvars a\n0.5 0.5 : a\n", "trailing input");
  fails_with("kb x\n", "missing 'vars'");
}
