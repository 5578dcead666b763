#include <doctest.h>

#include "support.hpp"
#include "tfsparse/render.hpp"

using namespace testing;

namespace {

GrammarError grammar_error(const std::string& text) {
  try {
    load_grammar(text);
  } catch (const GrammarError& e) {
    return e;
  }
  FAIL("grammar loaded");
  return GrammarError(GrammarErrorKind::Io, 0, 0, "");
}

const char* kTiny =
    "signature\n"
    "  bot sub [a, b].\n"
    "  features [F, G].\n"
    "start a.\n";

}  // namespace

TEST_SUITE("grammar") {

TEST_CASE("example grammar shape") {
  const Grammar& g = example_grammar();
  CHECK(g.rules().size() == 3);
  CHECK(g.lexicon().size() == 3);
  CHECK(g.start() == avm("phrase & SYN:s"));
  CHECK(g.rules()[0].name == "r1");
  CHECK(g.rules()[0].arity() == 2);
  CHECK(g.rules()[1].arity() == 1);
  CHECK_FALSE(g.has_epsilon_rules());
  CHECK(lint(g).empty());
  CHECK(g.hierarchy().feature_name(0) == "SYN");
}

TEST_CASE("a tag on body and head shares across elements") {
  const auto& h = example_types();
  const Amrs& r2 = example_grammar().rules()[1].structure;
  const FeatureGraph& fg = r2.graph();
  CHECK(fg.follow(r2.root(1), path(h, {"HEAD"})) == fg.follow(r2.root(2), path(h, {"HEAD"})));
  CHECK(fg.follow(r2.root(1), path(h, {"CASE"})) == fg.follow(r2.root(2), path(h, {"CASE"})));
  CHECK(fg.follow(r2.root(1), path(h, {"SYN"})) != fg.follow(r2.root(2), path(h, {"SYN"})));
}

TEST_CASE("unknown words") {
  const Grammar& g = example_grammar();
  CHECK_THROWS_AS(g.cat("zzz"), UnknownWord);
  try {
    g.check_words({"john", "zzz"});
    FAIL("expected UnknownWord");
  } catch (const UnknownWord& e) {
    CHECK(e.word() == "zzz");
    CHECK(e.position() == 2);
  }
  CHECK(tokenize_sentence("  John LOVES\tfish ") == Sentence{"john", "loves", "fish"});
  CHECK(tokenize_sentence("").empty());
}

TEST_CASE("minimal grammars") {
  Grammar g = load_grammar(kTiny);
  CHECK(g.rules().empty());
  CHECK(g.lexicon().empty());
  Grammar eps = load_grammar(std::string(kTiny) + "rules\n  e: => a & F:b.\n");
  CHECK(eps.has_epsilon_rules());
  CHECK(eps.rules()[0].length() == 1);
  CHECK(olp_grammar().has_epsilon_rules());
}

TEST_CASE("load errors carry kind and position") {
  GrammarError e = grammar_error("signature\n  bot sub [a].\nstart a\nrules\n");
  CHECK(e.kind() == GrammarErrorKind::Syntax);
  CHECK(e.line() == 4);
  CHECK(e.column() == 1);

  e = grammar_error(std::string(kTiny) + "lexicon\n  w -> c.\n");
  CHECK(e.kind() == GrammarErrorKind::UnknownType);
  CHECK(e.line() == 6);
  CHECK(e.column() == 8);

  CHECK(grammar_error(std::string(kTiny) + "lexicon\n  w -> a & H:b.\n").kind() == GrammarErrorKind::UnknownFeature);
  CHECK(grammar_error(std::string(kTiny) + "lexicon\n  w -> a & F:#1.\n").kind() == GrammarErrorKind::Tag);
  CHECK(grammar_error(std::string(kTiny) + "lexicon\n  w -> a & F:#1(a) & G:#1(b).\n").kind() ==
        GrammarErrorKind::Tag);
  CHECK(grammar_error(std::string(kTiny) + "lexicon\n  w -> a & b.\n").kind() == GrammarErrorKind::Inconsistent);
  CHECK(grammar_error("signature\n  bot sub [a].\n").kind() == GrammarErrorKind::Syntax);
  CHECK(std::string(grammar_error("signature\n  bot sub [a].\nstart a\n").what()).rfind("4:1: ", 0) == 0);
}

TEST_CASE("signature errors surface from the loader") {
  CHECK_THROWS_AS(load_grammar("signature\n  bot sub [a, b].\n  a sub [c, d].\n  b sub [c, d].\nstart a.\n"),
                  SignatureError);
  CHECK_THROWS_AS(load_grammar_file(grammar_path("does-not-exist.gr")), GrammarError);
}

TEST_CASE("lint reports orphan types and lexical heads") {
  Grammar orphan = load_grammar(
      "signature\n  bot sub [a, b, z].\n  features [F].\nstart a.\nlexicon\n  w -> a & F:b.\n");
  auto w = lint(orphan);
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("'z'") != std::string::npos);

  Grammar heads = load_grammar(std::string(kTiny) + "rules\n  r: b => a.\nlexicon\n  w -> a & F:b.\n");
  auto v = lint(heads);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("'r'") != std::string::npos);
}

TEST_CASE("rendered grammars load back equal") {
  for (const char* name : {"example.gr", "olp_demo.gr", "cyclic_demo.gr"}) {
    Grammar g = load_grammar_file(grammar_path(name));
    Grammar back = load_grammar(render_grammar(g));
    CHECK(back.start() == g.start());
    REQUIRE(back.rules().size() == g.rules().size());
    for (std::size_t i = 0; i < g.rules().size(); ++i) {
      CHECK(back.rules()[i].name == g.rules()[i].name);
      CHECK(back.rules()[i].structure == g.rules()[i].structure);
    }
    REQUIRE(back.lexicon().size() == g.lexicon().size());
    for (std::size_t i = 0; i < g.lexicon().size(); ++i) {
      CHECK(back.lexicon()[i].word == g.lexicon()[i].word);
      CHECK(back.lexicon()[i].category == g.lexicon()[i].category);
    }
    CHECK(back.hierarchy().type_count() == g.hierarchy().type_count());
    CHECK(render_grammar(back) == render_grammar(g));
  }
}

TEST_CASE("rendered structures read back equal") {
  const auto& h = example_types();
  std::mt19937 rng(29);
  Shape s;
  s.max_nodes = 7;
  s.share = 0.3;
  s.back = 0.15;
  s.features = 10;
  for (int k = 0; k < 500; ++k) {
    Amrs a = random_amrs(rng, h, s, pick(rng, 4));
    CHECK(read_amrs(h, render_amrs(a, h)) == a);
  }
  Afs item18 = avm("phrase & SYN:s & SUBJ:(head & AGR:#1(agr & PERS:3rd & NUM:sg)) & HEAD:(head & AGR:#1)");
  CHECK(render_avm(item18, h) == "phrase & SYN:s & SUBJ:(head & AGR:#1(agr & PERS:3rd & NUM:sg)) & HEAD:(head & AGR:#1)");
  CHECK(render_avm(avm("#1(bot & SYN:#1)"), h) == "#1(bot & SYN:#1)");
  Json j = avm_json(item18, h);
  CHECK(j["type"] == "phrase");
  CHECK(j["features"][1][1]["features"][0][1]["tag"] == 1);
  CHECK(j["features"][2][1]["features"][0][1]["ref"] == 1);
}

TEST_CASE("pre-terminals concatenate") {
  const Grammar& g = example_grammar();
  const Sentence w{"john", "loves", "fish", "fish"};
  CHECK(g.pre_terminals(w, 2, 1) == std::vector<Amrs>{Amrs()});
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (std::size_t j = i; j <= w.size(); ++j)
      for (std::size_t k = j; k <= w.size(); ++k) {
        auto left = g.pre_terminals(w, i, j), right = g.pre_terminals(w, j + 1, k), all = g.pre_terminals(w, i, k);
        for (const Amrs& a : left)
          for (const Amrs& b : right) CHECK(std::find(all.begin(), all.end(), concat(a, b)) != all.end());
      }
}

}
