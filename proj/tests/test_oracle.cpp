#include <doctest.h>

#include "support.hpp"
#include "tfsparse/oracle.hpp"

using namespace testing;

namespace {

Sentence span(const Sentence& w, std::size_t i, std::size_t j) {
  return Sentence(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("shortest derivation of the golden sentence") {
  const Grammar& g = example_grammar();
  const Sentence w = tokenize_sentence("john loves fish");
  OracleResult r = derives(g, w, 12);
  REQUIRE(r.verdict == OracleVerdict::Derivable);
  REQUIRE(r.steps.size() == 2);
  CHECK(g.rules()[r.steps[0].rule].name == "r1");
  CHECK(r.steps[0].index == 1);
  CHECK(g.rules()[r.steps[1].rule].name == "r3");
  CHECK(r.steps[1].index == 2);
  CHECK(render_tree(derivation_tree(g, r, w)) ==
        "r1 [0-3]\n  john [0-1]\n  r3 [1-3]\n    loves [1-2]\n    fish [2-3]\n");
  Json j = tree_json(derivation_tree(g, r, w));
  CHECK(j["children"][1]["label"] == "r3");
  CHECK(j["children"][1]["span"] == Json::array({1, 3}));
}

TEST_CASE("the four-step derivation replays") {
  const Grammar& g = example_grammar();
  const auto& h = g.hierarchy();
  const auto& rules = g.rules();
  Amrs form(g.start());
  auto s1 = strong_derive_step(form, rules[0], 1, h);
  REQUIRE(s1);
  CHECK(s1->length() == 2);
  // The subject and verb phrase share their AGR value.
  CHECK(s1->graph().follow(s1->root(1), path(h, {"HEAD", "AGR"})) ==
        s1->graph().follow(s1->root(2), path(h, {"HEAD", "AGR"})));
  auto s2 = strong_derive_step(*s1, rules[2], 2, h);
  REQUIRE(s2);
  auto s3 = strong_derive_step(*s2, rules[1], 1, h);
  REQUIRE(s3);
  auto s4 = strong_derive_step(*s3, rules[1], 3, h);
  REQUIRE(s4);
  REQUIRE(s4->length() == 3);
  const Sentence w{"john", "loves", "fish"};
  Amrs words = *s4;
  for (std::size_t i = 1; i <= 3; ++i) {
    auto next = unify_in_context(words, i, g.cat(w[i - 1]).front(), h);
    REQUIRE(next);
    words = *next;
  }
  CHECK_FALSE(strong_derive_step(form, rules[1], 1, h));
  CHECK_THROWS_AS(strong_derive_step(form, rules[0], 2, h), IndexOutOfRange);
}

TEST_CASE("negative and budget outcomes") {
  const Grammar& g = example_grammar();
  CHECK(derives(g, tokenize_sentence("john loves"), 12).verdict == OracleVerdict::NotDerivable);
  CHECK(derives(g, tokenize_sentence("loves fish john"), 12).verdict == OracleVerdict::NotDerivable);
  CHECK(derives(g, tokenize_sentence("john loves fish"), 0).verdict == OracleVerdict::BudgetExhausted);
  CHECK(derives(g, tokenize_sentence("john loves fish"), 1).verdict == OracleVerdict::BudgetExhausted);
  CHECK_THROWS_AS(derives(g, tokenize_sentence("john zzz"), 12), UnknownWord);
}

TEST_CASE("zero steps means unifiable with the words") {
  const Grammar& g = example_grammar();
  const auto& h = g.hierarchy();
  const Sentence w{"john"};
  CHECK(derives(g, mrs("word & SYN:n"), w, 0).verdict == OracleVerdict::Derivable);
  CHECK(derives(g, mrs("bot"), w, 0).verdict == OracleVerdict::Derivable);
  CHECK(derives(g, Amrs(), {}, 0).verdict == OracleVerdict::Derivable);
  OracleResult none = derives(g, mrs("word & SYN:v"), w, 0);
  CHECK(none.verdict == OracleVerdict::NotDerivable);
  OracleResult two = derives(g, mrs("word, word"), {"john", "fish"}, 0);
  REQUIRE(two.verdict == OracleVerdict::Derivable);
  CHECK(two.steps.empty());
  CHECK(amrs_order(mrs("word, word"), *two.final_form, h));
}

TEST_CASE("a rule mother derives its body") {
  const Grammar& g = example_grammar();
  const auto& h = g.hierarchy();
  std::mt19937 rng(31);
  Shape s = unifiable_shape(h, 3);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const Rule& rule = g.rules()[pick(rng, g.rules().size())];
    const std::size_t n = rule.length();
    auto a = unify_in_context(rule.structure, n, random_afs(rng, h, s), h);
    if (!a) continue;
    ++checked;
    auto step = strong_derive_step(substructure(*a, n, n), rule, 1, h);
    REQUIRE(step);
    CHECK(step->length() == n - 1);
    CHECK(amrs_order(rule.body(), *step, h));
  }
  CHECK(checked > 30);
}

TEST_CASE("steps from a more specific form stay more specific") {
  const Grammar& g = example_grammar();
  const auto& h = g.hierarchy();
  std::mt19937 rng(37);
  Shape s = unifiable_shape(h, 3);
  int checked = 0;
  const std::vector<Amrs> forms{Amrs(g.start()), mrs("phrase & SYN:n, phrase & SYN:v"), mrs("bot, bot, bot")};
  for (int k = 0; k < 300; ++k) {
    const Amrs& a = forms[pick(rng, forms.size())];
    const std::size_t j = 1 + pick(rng, a.length());
    auto a2 = unify_in_context(a, j, random_afs(rng, h, s), h);
    if (!a2) continue;
    for (const Rule& rule : g.rules()) {
      auto b = strong_derive_step(a, rule, j, h);
      auto b2 = strong_derive_step(*a2, rule, j, h);
      if (!b || !b2) continue;
      ++checked;
      CHECK(amrs_order(*b, *b2, h));
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("more specific accepted structures still derive") {
  const Grammar& g = example_grammar();
  for (const char* text : {"john loves fish", "fish loves john", "fish loves fish"}) {
    const Sentence w = tokenize_sentence(text);
    ComputationResult r = run(g, w, {});
    REQUIRE(r.witness);
    CHECK(derives(g, r.witness->structure, w, 12).verdict == OracleVerdict::Derivable);
  }
}

TEST_CASE("derivations compose over unshared halves") {
  const Grammar& g = example_grammar();
  Amrs np(g.rules()[1].head()), vp(g.rules()[2].head());
  const Sentence left{"john"}, right{"loves", "fish"};
  REQUIRE(derives(g, np, left, 12).verdict == OracleVerdict::Derivable);
  REQUIRE(derives(g, vp, right, 12).verdict == OracleVerdict::Derivable);
  CHECK(derives(g, concat(np, vp), {"john", "loves", "fish"}, 12).verdict == OracleVerdict::Derivable);
}

TEST_CASE("every chart item derives the words it spans") {
  const Grammar& g = example_grammar();
  for (const char* text : {"john loves fish", "fish loves fish", "loves fish john", "john loves"}) {
    const Sentence w = tokenize_sentence(text);
    ComputationConfig cfg;
    cfg.subsumption_filter = false;
    cfg.early_exit = false;
    ComputationResult r = run(g, w, cfg);
    for (const Item* x : r.chart.items()) {
      OracleResult o = derives(g, x->structure, span(w, x->i, x->j), 12);
      CHECK_MESSAGE(o.verdict == OracleVerdict::Derivable, "item ", x->id, " of '", text, "'");
    }
  }
}

}
