#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tfsparse/grammar.hpp"
#include "tfsparse/mrs.hpp"
#include "tfsparse/render.hpp"

namespace tfsparse {

// Replaces element j (1-based) of `a` by the body of `rule`, after unifying
// it with the rule's mother. Nothing if that unification fails.
std::optional<Amrs> strong_derive_step(const Amrs& a, const Rule& rule, std::size_t j,
                                       const TypeHierarchy& h);

struct DerivationStep {
  std::size_t rule;   // index into Grammar::rules()
  std::size_t index;  // 1-based element expanded
  Amrs result;        // sentential form after the step
};

struct DerivationNode {
  std::string label;  // rule name, or the word for a leaf
  std::size_t from = 0, to = 0;  // covered words: positions from+1..to
  std::vector<DerivationNode> children;
};

enum class OracleVerdict { Derivable, NotDerivable, BudgetExhausted };
const char* oracle_verdict_name(OracleVerdict v);

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::NotDerivable;
  std::vector<DerivationStep> steps;  // a shortest leftmost derivation
  std::optional<Amrs> final_form;     // last form, unified with the words
  std::size_t states = 0;             // search states visited
};

// Bounded leftmost search for a derivation from `a` to the words of `w`, with
// at most max_steps rule applications. Each element of the final form must
// unify with a category of the word at its position. Throws UnknownWord.
OracleResult derives(const Grammar& g, const Amrs& a, const Sentence& w, std::size_t max_steps);
// From the start symbol.
OracleResult derives(const Grammar& g, const Sentence& w, std::size_t max_steps);

// Derivation tree of a successful result rooted at a single-element start.
DerivationNode derivation_tree(const Grammar& g, const OracleResult& r, const Sentence& w);
std::string render_tree(const DerivationNode& n);
Json tree_json(const DerivationNode& n);

}  // namespace tfsparse
