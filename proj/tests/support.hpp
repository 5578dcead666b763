// Fixtures and random structure generators shared by the test binaries.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tfsparse/afs.hpp"
#include "tfsparse/grammar.hpp"
#include "tfsparse/mrs.hpp"
#include "tfsparse/parser.hpp"
#include "tfsparse/tfs.hpp"

namespace testing {

using namespace tfsparse;

inline std::string grammar_path(const std::string& name) { return std::string(TFSPARSE_GRAMMAR_DIR) + "/" + name; }

inline const Grammar& example_grammar() {
  static const Grammar g = load_grammar_file(grammar_path("example.gr"));
  return g;
}

inline const Grammar& olp_grammar() {
  static const Grammar g = load_grammar_file(grammar_path("olp_demo.gr"));
  return g;
}

inline const TypeHierarchy& example_types() { return example_grammar().hierarchy(); }

inline TypeId ty(const TypeHierarchy& h, const std::string& name) { return h.find_type(name).value(); }
inline FeatureId ft(const TypeHierarchy& h, const std::string& name) { return h.find_feature(name).value(); }

inline Path path(const TypeHierarchy& h, std::initializer_list<const char*> names) {
  Path p;
  for (const char* n : names) p.push_back(ft(h, n));
  return p;
}

inline Afs avm(const std::string& text) { return read_avm(example_types(), text); }
inline Amrs mrs(const std::string& text) { return read_amrs(example_types(), text); }

// Knobs for random graphs. Tree arcs always point from older to newer nodes;
// `share` adds further forward arcs (reentrancy), `back` adds arcs to older
// nodes or self-loops (cycles).
struct Shape {
  std::size_t max_nodes = 6;
  std::size_t features = 4;  // draw from the first k features only
  double bot = 0.5;          // chance a node is typed bot
  double share = 0.2;
  double back = 0.0;
  std::vector<TypeId> types;  // pool for non-bot types; empty means all
};

inline std::size_t pick(std::mt19937& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
inline bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline TypeId random_type(std::mt19937& rng, const TypeHierarchy& h, const Shape& s) {
  if (coin(rng, s.bot)) return h.bottom();
  if (!s.types.empty()) return s.types[pick(rng, s.types.size())];
  return static_cast<TypeId>(pick(rng, h.type_count()));
}

// Random f-arc from `from` to `to` if `from` still has a free feature.
inline void random_arc(std::mt19937& rng, ConcreteGraph& g, NodeId from, NodeId to, std::size_t features) {
  std::vector<FeatureId> free;
  for (FeatureId f = 0; f < features; ++f)
    if (!g.arc(from, f)) free.push_back(f);
  if (!free.empty()) g.add_arc(from, free[pick(rng, free.size())], to);
}

// Graph with `roots` parentless nodes first, every other node hung under an
// older one.
inline std::pair<ConcreteGraph, std::vector<NodeId>> random_graph(std::mt19937& rng, const TypeHierarchy& h,
                                                                  const Shape& s, std::size_t roots) {
  const std::size_t features = std::min(s.features, h.feature_count());
  ConcreteGraph g;
  if (roots == 0) return {std::move(g), {}};
  const std::size_t n = roots + pick(rng, s.max_nodes);
  std::vector<NodeId> ids;
  for (std::size_t k = 0; k < n; ++k) ids.push_back(g.add_node(random_type(rng, h, s)));
  for (std::size_t k = roots; k < n; ++k) {
    for (int tries = 0; tries < 8; ++tries) {
      NodeId parent = ids[pick(rng, k)];
      std::size_t before = g.nodes().at(parent).arcs.size();
      random_arc(rng, g, parent, ids[k], features);
      if (g.nodes().at(parent).arcs.size() > before) break;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n && coin(rng, s.share)) random_arc(rng, g, ids[k], ids[k + 1 + pick(rng, n - k - 1)], features);
    if (coin(rng, s.back)) random_arc(rng, g, ids[k], ids[pick(rng, k + 1)], features);
  }
  return {std::move(g), std::vector<NodeId>(ids.begin(), ids.begin() + static_cast<long>(roots))};
}

inline ConcreteTfs random_tfs(std::mt19937& rng, const TypeHierarchy& h, const Shape& s) {
  auto [g, roots] = random_graph(rng, h, s, 1);
  return ConcreteTfs(std::move(g), roots.front());
}

inline Afs random_afs(std::mt19937& rng, const TypeHierarchy& h, const Shape& s) {
  return abs(random_tfs(rng, h, s));
}

inline Amrs random_amrs(std::mt19937& rng, const TypeHierarchy& h, const Shape& s, std::size_t length) {
  auto [g, roots] = random_graph(rng, h, s, length);
  return abs_mrs(ConcreteMrs(std::move(g), roots));
}

// Shapes that unify often enough over the example signature: few features,
// mostly bot, and non-bot types drawn from one compatible family per run.
inline Shape unifiable_shape(const TypeHierarchy& h, std::size_t max_nodes = 5) {
  Shape s;
  s.max_nodes = max_nodes;
  s.features = 3;
  s.bot = 0.6;
  s.share = 0.25;
  for (const char* t : {"word", "phrase", "case", "nom", "agr", "head", "syn", "n"})
    s.types.push_back(ty(h, t));
  return s;
}

using ItemKey = std::tuple<std::size_t, std::size_t, ItemStatus, Amrs>;

inline ItemKey key_of(const Item& x) { return {x.i, x.j, x.status, x.structure}; }

inline std::set<ItemKey> keys_of(const Chart& c, std::size_t up_to_iteration = static_cast<std::size_t>(-1)) {
  std::set<ItemKey> out;
  for (const Item* x : c.items())
    if (x->iteration <= up_to_iteration) out.insert(key_of(*x));
  return out;
}

// Every sentence of at most `max_len` words over the example lexicon.
inline std::vector<Sentence> all_sentences(std::size_t max_len) {
  const std::vector<std::string> words{"john", "loves", "fish"};
  std::vector<Sentence> out{{}};
  std::vector<Sentence> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Sentence> next;
    for (const auto& s : layer)
      for (const auto& w : words) {
        Sentence t = s;
        t.push_back(w);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace testing
