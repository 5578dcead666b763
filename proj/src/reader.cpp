#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tfsparse/grammar.hpp"
#include "tfsparse/render.hpp"

namespace tfsparse {

namespace {

// ---------------------------------------------------------------------------
// Tokens

enum class Tok { Ident, Tag, Colon, Amp, LParen, RParen, LBrack, RBrack, Comma, Dot, Arrow, RuleArrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool is_feature_name(std::string_view s) {
  bool upper = false;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isupper(static_cast<unsigned char>(c))) upper = true;
  }
  return upper;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line, k = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, k});
      advance(j - i);
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j == i + 1) throw GrammarError(GrammarErrorKind::Syntax, l, k, "expected digits after '#'");
      out.push_back({Tok::Tag, std::string(src.substr(i + 1, j - i - 1)), l, k});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 2) == "=>") {
      out.push_back({Tok::RuleArrow, "=>", l, k});
      advance(2);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", l, k});
      advance(2);
      continue;
    }
    Tok t;
    switch (c) {
      case ':': t = Tok::Colon; break;
      case '&': t = Tok::Amp; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case '[': t = Tok::LBrack; break;
      case ']': t = Tok::RBrack; break;
      case ',': t = Tok::Comma; break;
      case '.': t = Tok::Dot; break;
      default:
        throw GrammarError(GrammarErrorKind::Syntax, l, k, std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), l, k});
    advance(1);
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree

struct Term {
  enum Kind { Type, Tag, TagWith, Feature, Group } kind;
  std::string name;   // type or feature name
  int tag = 0;
  std::vector<Term> sub;  // conjunction for TagWith/Group, single term for Feature
  int line = 0, col = 0;
};
using Conj = std::vector<Term>;

struct Clause {
  std::string name;        // rule name or word
  std::vector<Conj> avms;  // body daughters then mother, or a single AVM
  int line = 0, col = 0;
};

struct FileAst {
  std::vector<TypeDecl> decls;
  std::optional<std::vector<std::string>> features;
  std::optional<Clause> start;
  std::vector<Clause> rules;
  std::vector<Clause> entries;
};

bool is_keyword(const std::string& s) { return s == "start" || s == "rules" || s == "lexicon"; }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  FileAst file() {
    FileAst ast;
    expect_word("signature");
    while (peek().kind == Tok::Ident) {
      if (peek().text == "features" && peek(1).kind == Tok::LBrack) {
        if (ast.features) fail(peek(), "feature order declared twice");
        ast.features = feature_decl();
      } else if (peek(1).kind == Tok::Ident && peek(1).text == "sub") {
        ast.decls.push_back(type_decl());
      } else {
        break;
      }
    }
    if (ast.decls.empty()) fail(peek(), "expected at least one type declaration");
    while (peek().kind != Tok::End) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident || !is_keyword(kw.text))
        fail(kw, "expected 'start', 'rules' or 'lexicon'");
      next();
      if (kw.text == "start") {
        if (ast.start) fail(kw, "start declared twice");
        Clause c{"start", {}, kw.line, kw.col};
        c.avms.push_back(avm());
        expect(Tok::Dot, "'.'");
        ast.start = std::move(c);
      } else if (kw.text == "rules") {
        while (peek().kind == Tok::Ident && !is_keyword(peek().text)) ast.rules.push_back(rule());
      } else {
        while (peek().kind == Tok::Ident && !is_keyword(peek().text)) ast.entries.push_back(entry());
      }
    }
    if (!ast.start) fail(peek(), "missing start declaration");
    return ast;
  }

  std::vector<Conj> sequence() {
    std::vector<Conj> out;
    if (peek().kind == Tok::End) return out;
    out.push_back(avm());
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(avm());
    }
    if (peek().kind != Tok::End) fail(peek(), "expected ',' or end of input");
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw GrammarError(GrammarErrorKind::Syntax, at.line, at.col, msg + " (found '" + at.text + "')");
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }
  void expect_word(const char* word) {
    if (peek().kind != Tok::Ident || peek().text != word) fail(peek(), std::string("expected '") + word + "'");
    next();
  }
  std::string type_name() {
    const Token& t = expect(Tok::Ident, "a type name");
    if (is_feature_name(t.text)) fail(t, "upper-case names are features, not types");
    return t.text;
  }

  TypeDecl type_decl() {
    TypeDecl d;
    d.name = type_name();
    expect_word("sub");
    expect(Tok::LBrack, "'['");
    if (peek().kind != Tok::RBrack) {
      d.subtypes.push_back(type_name());
      while (peek().kind == Tok::Comma) {
        next();
        d.subtypes.push_back(type_name());
      }
    }
    expect(Tok::RBrack, "']'");
    expect(Tok::Dot, "'.'");
    return d;
  }

  std::vector<std::string> feature_decl() {
    next();  // "features"
    expect(Tok::LBrack, "'['");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (;;) {
      const Token& f = expect(Tok::Ident, "a feature name");
      if (!is_feature_name(f.text)) fail(f, "feature names are upper-case");
      if (!seen.insert(f.text).second) fail(f, "feature listed twice");
      out.push_back(f.text);
      if (peek().kind != Tok::Comma) break;
      next();
    }
    expect(Tok::RBrack, "']'");
    expect(Tok::Dot, "'.'");
    return out;
  }

  Clause rule() {
    const Token& name = next();
    Clause c{name.text, {}, name.line, name.col};
    expect(Tok::Colon, "':' after rule name");
    if (peek().kind != Tok::RuleArrow) {
      c.avms.push_back(avm());
      while (peek().kind == Tok::Comma) {
        next();
        c.avms.push_back(avm());
      }
    }
    expect(Tok::RuleArrow, "'=>'");
    c.avms.push_back(avm());
    expect(Tok::Dot, "'.'");
    return c;
  }

  Clause entry() {
    const Token& word = next();
    Clause c{word.text, {}, word.line, word.col};
    expect(Tok::Arrow, "'->' after word");
    c.avms.push_back(avm());
    expect(Tok::Dot, "'.'");
    return c;
  }

  Conj avm() {
    Conj c;
    c.push_back(term());
    while (peek().kind == Tok::Amp) {
      next();
      c.push_back(term());
    }
    return c;
  }

  Term term() {
    const Token& t = peek();
    Term out;
    out.line = t.line;
    out.col = t.col;
    switch (t.kind) {
      case Tok::Ident:
        next();
        if (is_feature_name(t.text)) {
          expect(Tok::Colon, "':' after feature name");
          out.kind = Term::Feature;
          out.name = t.text;
          out.sub.push_back(term());
        } else {
          if (peek().kind == Tok::Colon) fail(peek(), "feature names are upper-case");
          out.kind = Term::Type;
          out.name = t.text;
        }
        return out;
      case Tok::Tag:
        next();
        out.tag = std::stoi(t.text);
        out.kind = Term::Tag;
        if (peek().kind == Tok::LParen) {
          next();
          out.kind = Term::TagWith;
          out.sub = avm();
          expect(Tok::RParen, "')'");
        }
        return out;
      case Tok::LParen:
        next();
        out.kind = Term::Group;
        out.sub = avm();
        expect(Tok::RParen, "')'");
        return out;
      default:
        fail(t, "expected a type, feature, tag or '('");
    }
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Elaboration into graphs

class Elaborator {
 public:
  explicit Elaborator(const TypeHierarchy& h) : h_(h), e_(h) {}

  ClassId avm(const Conj& c) {
    ClassId n = e_.add_node(h_.bottom());
    conj(c, n);
    return n;
  }

  FeatureGraph extract(const std::vector<ClassId>& roots) const { return e_.extract(roots); }

  void check_tag_use() const {
    for (const auto& [tag, use] : uses_)
      if (use.count == 1)
        throw GrammarError(GrammarErrorKind::Tag, use.line, use.col,
                           "tag #" + std::to_string(tag) + " is used only once");
  }

 private:
  struct Use {
    ClassId node;
    int count, line, col;
  };

  void conj(const Conj& c, ClassId n) {
    for (const Term& t : c) term(t, n);
  }

  void term(const Term& t, ClassId n) {
    switch (t.kind) {
      case Term::Type: {
        auto type = h_.find_type(t.name);
        if (!type) throw GrammarError(GrammarErrorKind::UnknownType, t.line, t.col, "unknown type '" + t.name + "'");
        TypeId before = e_.type(n);
        if (!e_.constrain(n, *type))
          throw GrammarError(GrammarErrorKind::Inconsistent, t.line, t.col,
                             "type '" + t.name + "' is inconsistent with '" + h_.type_name(before) + "'");
        return;
      }
      case Term::Tag:
      case Term::TagWith: {
        auto it = uses_.find(t.tag);
        if (it == uses_.end()) {
          uses_.emplace(t.tag, Use{n, 1, t.line, t.col});
        } else {
          ++it->second.count;
          if (!e_.unify(it->second.node, n))
            throw GrammarError(GrammarErrorKind::Tag, t.line, t.col,
                               "tag #" + std::to_string(t.tag) + " is inconsistently typed");
        }
        if (t.kind == Term::TagWith) {
          try {
            conj(t.sub, n);
          } catch (const GrammarError& err) {
            if (err.kind() != GrammarErrorKind::Inconsistent) throw;
            throw GrammarError(GrammarErrorKind::Tag, err.line(), err.column(),
                               "tag #" + std::to_string(t.tag) + " is inconsistently typed: " + err.what());
          }
        }
        return;
      }
      case Term::Feature: {
        auto f = h_.find_feature(t.name);
        if (!f)
          throw GrammarError(GrammarErrorKind::UnknownFeature, t.line, t.col, "unknown feature '" + t.name + "'");
        ClassId child = e_.arc_target(n, *f);
        if (e_.failed())
          throw GrammarError(GrammarErrorKind::Inconsistent, t.line, t.col, "inconsistent value for " + t.name);
        term(t.sub.front(), child);
        return;
      }
      case Term::Group:
        conj(t.sub, n);
        return;
    }
  }

  const TypeHierarchy& h_;
  MergeEngine e_;
  std::map<int, Use> uses_;
};

void collect_features(const Conj& c, std::set<std::string>& out) {
  for (const Term& t : c) {
    if (t.kind == Term::Feature) out.insert(t.name);
    collect_features(t.sub, out);
  }
}

FeatureGraph elaborate(const TypeHierarchy& h, const std::vector<Conj>& avms, bool strict_tags) {
  Elaborator el(h);
  std::vector<ClassId> roots;
  for (const Conj& c : avms) roots.push_back(el.avm(c));
  if (strict_tags) el.check_tag_use();
  return el.extract(roots);
}

}  // namespace

Grammar load_grammar(std::string_view text) {
  FileAst ast = Parser(lex(text)).file();

  std::vector<std::string> features;
  if (ast.features) {
    features = *ast.features;
  } else {
    std::set<std::string> found;
    collect_features(ast.start->avms.front(), found);
    for (const auto* group : {&ast.rules, &ast.entries})
      for (const Clause& c : *group)
        for (const Conj& a : c.avms) collect_features(a, found);
    features.assign(found.begin(), found.end());
  }
  TypeHierarchy h = TypeHierarchy::build(ast.decls, features);

  Afs start(elaborate(h, ast.start->avms, true));
  std::vector<Rule> rules;
  std::set<std::string> names;
  for (const Clause& c : ast.rules) {
    if (!names.insert(c.name).second)
      throw GrammarError(GrammarErrorKind::Syntax, c.line, c.col, "rule '" + c.name + "' defined twice");
    rules.push_back(Rule{c.name, Amrs(elaborate(h, c.avms, true))});
  }
  std::vector<LexicalEntry> lexicon;
  for (const Clause& c : ast.entries) {
    std::string word = c.name;
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    lexicon.push_back(LexicalEntry{word, Afs(elaborate(h, c.avms, true))});
  }
  return Grammar(std::move(h), std::move(start), std::move(rules), std::move(lexicon));
}

Grammar load_grammar_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError(GrammarErrorKind::Io, 0, 0, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_grammar(buf.str());
}

Amrs read_amrs(const TypeHierarchy& h, std::string_view text) {
  return Amrs(elaborate(h, Parser(lex(text)).sequence(), false));
}

Afs read_avm(const TypeHierarchy& h, std::string_view text) {
  Amrs a = read_amrs(h, text);
  if (a.length() != 1) throw GrammarError(GrammarErrorKind::Syntax, 1, 1, "expected a single AVM");
  return a.element(1);
}

std::string render_grammar(const Grammar& g) {
  const TypeHierarchy& h = g.hierarchy();
  std::string out = "signature\n";
  for (TypeId t = 0; t < h.type_count(); ++t) {
    const auto& subs = h.immediate_subtypes(t);
    if (subs.empty()) continue;
    out += "  " + h.type_name(t) + " sub [";
    for (std::size_t i = 0; i < subs.size(); ++i) out += (i ? ", " : "") + h.type_name(subs[i]);
    out += "].\n";
  }
  if (h.feature_count()) {
    out += "  features [";
    for (FeatureId f = 0; f < h.feature_count(); ++f) out += (f ? ", " : "") + h.feature_name(f);
    out += "].\n";
  }
  out += "\nstart " + render_avm(g.start(), h) + ".\n\nrules\n";
  for (const Rule& r : g.rules()) {
    std::string body = render_amrs(r.structure, h);
    // The mother is the last element; split it off at the final separator
    // that is not inside parentheses.
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (depth == 0 && body.compare(i, 2, ", ") == 0) split = i;
    }
    if (split == std::string::npos)
      out += "  " + r.name + ": => " + body + ".\n";
    else
      out += "  " + r.name + ": " + body.substr(0, split) + " => " + body.substr(split + 2) + ".\n";
  }
  out += "\nlexicon\n";
  for (const LexicalEntry& e : g.lexicon()) out += "  " + e.word + " -> " + render_avm(e.category, h) + ".\n";
  return out;
}

}  // namespace tfsparse
