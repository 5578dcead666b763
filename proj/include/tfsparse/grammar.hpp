#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tfsparse/afs.hpp"
#include "tfsparse/mrs.hpp"
#include "tfsparse/signature.hpp"

namespace tfsparse {

using Sentence = std::vector<std::string>;

// Splits on whitespace and lower-cases.
Sentence tokenize_sentence(std::string_view text);

enum class GrammarErrorKind { Syntax, UnknownType, UnknownFeature, Tag, Inconsistent, Io };

class GrammarError : public std::runtime_error {
 public:
  GrammarError(GrammarErrorKind kind, int line, int column, const std::string& message);
  GrammarErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  GrammarErrorKind kind_;
  int line_, column_;
};

class UnknownWord : public std::runtime_error {
 public:
  UnknownWord(std::string word, std::size_t position);
  const std::string& word() const { return word_; }
  std::size_t position() const { return position_; }

 private:
  std::string word_;
  std::size_t position_;
};

// Body daughters at indices 1..arity, the mother at the last index.
struct Rule {
  std::string name;
  Amrs structure;

  std::size_t length() const { return structure.length(); }
  std::size_t arity() const { return structure.length() - 1; }
  Afs head() const { return structure.element(structure.length()); }
  Amrs body() const { return substructure(structure, 1, arity()); }
};

struct LexicalEntry {
  std::string word;
  Afs category;
};

class Grammar {
 public:
  Grammar(TypeHierarchy hierarchy, Afs start, std::vector<Rule> rules,
          std::vector<LexicalEntry> lexicon);

  const TypeHierarchy& hierarchy() const { return hierarchy_; }
  const Afs& start() const { return start_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<LexicalEntry>& lexicon() const { return lexicon_; }
  bool has_epsilon_rules() const;

  bool knows(std::string_view word) const { return by_word_.count(std::string(word)) != 0; }
  // Categories of a word in lexicon order. Throws UnknownWord.
  const std::vector<Afs>& cat(std::string_view word, std::size_t position = 0) const;
  // Throws UnknownWord for the first word missing from the lexicon.
  void check_words(const Sentence& w) const;
  // Every concatenation of one category per word of w_j..w_k (1-based,
  // inclusive); j == k + 1 yields the empty sequence.
  std::vector<Amrs> pre_terminals(const Sentence& w, std::size_t j, std::size_t k) const;

 private:
  TypeHierarchy hierarchy_;
  Afs start_;
  std::vector<Rule> rules_;
  std::vector<LexicalEntry> lexicon_;
  std::map<std::string, std::vector<Afs>> by_word_;
};

// Throws GrammarError or SignatureError.
Grammar load_grammar(std::string_view text);
Grammar load_grammar_file(const std::filesystem::path& path);

// Parses `avm ("," avm)*` (or nothing) against a hierarchy. Tags are shared
// across the sequence.
Amrs read_amrs(const TypeHierarchy& h, std::string_view text);
Afs read_avm(const TypeHierarchy& h, std::string_view text);

// Grammar-file text that loads back to an equal grammar.
std::string render_grammar(const Grammar& g);

// Non-fatal findings: rule heads that subsume a lexical category, and types
// unrelated to every type the grammar uses.
std::vector<std::string> lint(const Grammar& g);

}  // namespace tfsparse
