#include "tfsparse/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tfsparse {

Sentence tokenize_sentence(std::string_view text) {
  Sentence out;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) {
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.push_back(std::move(w));
  }
  return out;
}

GrammarError::GrammarError(GrammarErrorKind kind, int line, int column, const std::string& message)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      kind_(kind),
      line_(line),
      column_(column) {}

UnknownWord::UnknownWord(std::string word, std::size_t position)
    : std::runtime_error("unknown word '" + word + "' at position " + std::to_string(position)),
      word_(std::move(word)),
      position_(position) {}

Grammar::Grammar(TypeHierarchy hierarchy, Afs start, std::vector<Rule> rules,
                 std::vector<LexicalEntry> lexicon)
    : hierarchy_(std::move(hierarchy)),
      start_(std::move(start)),
      rules_(std::move(rules)),
      lexicon_(std::move(lexicon)) {
  for (const auto& e : lexicon_) by_word_[e.word].push_back(e.category);
}

bool Grammar::has_epsilon_rules() const {
  return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.arity() == 0; });
}

const std::vector<Afs>& Grammar::cat(std::string_view word, std::size_t position) const {
  auto it = by_word_.find(std::string(word));
  if (it == by_word_.end()) throw UnknownWord(std::string(word), position);
  return it->second;
}

void Grammar::check_words(const Sentence& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) cat(w[i], i + 1);
}

std::vector<Amrs> Grammar::pre_terminals(const Sentence& w, std::size_t j, std::size_t k) const {
  if (j < 1 || k > w.size() || j > k + 1) throw IndexOutOfRange("pre-terminal span outside the sentence");
  std::vector<Amrs> out{Amrs()};
  for (std::size_t i = j; i <= k; ++i) {
    std::vector<Amrs> grown;
    for (const Amrs& prefix : out)
      for (const Afs& c : cat(w[i - 1], i)) grown.push_back(concat(prefix, Amrs(c)));
    out = std::move(grown);
  }
  return out;
}

std::vector<std::string> lint(const Grammar& g) {
  const TypeHierarchy& h = g.hierarchy();
  std::vector<std::string> out;

  for (const Rule& r : g.rules()) {
    Afs head = r.head();
    for (const LexicalEntry& e : g.lexicon())
      if (afs_order(head, e.category, h))
        out.push_back("head of rule '" + r.name + "' subsumes a lexical category of '" + e.word + "'");
  }

  std::set<TypeId> used;
  auto note = [&used](const FeatureGraph& fg) {
    for (const auto& n : fg.nodes()) used.insert(n.type);
  };
  note(g.start().graph());
  for (const Rule& r : g.rules()) note(r.structure.graph());
  for (const LexicalEntry& e : g.lexicon()) note(e.category.graph());
  for (TypeId t = 1; t < h.type_count(); ++t) {
    bool related = std::any_of(used.begin(), used.end(), [&](TypeId u) {
      return u != h.bottom() && (h.subsumes(t, u) || h.subsumes(u, t));
    });
    if (!related) out.push_back("type '" + h.type_name(t) + "' is unrelated to every type the grammar uses");
  }
  return out;
}

}  // namespace tfsparse
