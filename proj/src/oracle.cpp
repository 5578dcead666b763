#include "tfsparse/oracle.hpp"

#include <unordered_map>
#include <unordered_set>

namespace tfsparse {

std::optional<Amrs> strong_derive_step(const Amrs& a, const Rule& rule, std::size_t j, const TypeHierarchy& h) {
  if (j < 1 || j > a.length()) throw IndexOutOfRange("expansion index outside the structure");
  MergeEngine e(h);
  const ClassId oa = e.append(a.graph());
  const ClassId orr = e.append(rule.structure.graph());
  if (!e.unify(oa + a.root(j), orr + rule.structure.root(rule.length()))) return std::nullopt;
  std::vector<ClassId> roots;
  for (std::size_t i = 1; i < j; ++i) roots.push_back(oa + a.root(i));
  for (std::size_t i = 1; i <= rule.arity(); ++i) roots.push_back(orr + rule.structure.root(i));
  for (std::size_t i = j + 1; i <= a.length(); ++i) roots.push_back(oa + a.root(i));
  return Amrs(e.extract(roots));
}

const char* oracle_verdict_name(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Derivable: return "derivable";
    case OracleVerdict::NotDerivable: return "not derivable";
    case OracleVerdict::BudgetExhausted: return "budget exhausted";
  }
  return "?";
}

namespace {

enum class Outcome { Found, NotFound, Exhausted };

struct State {
  Amrs form;
  std::size_t frozen;
  bool operator==(const State&) const = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.form.graph().hash() * 31 + s.frozen; }
};

// Leftmost search: elements before `frozen` are settled against the words at
// their positions; only the element at `frozen` may be expanded or settled
// next, which visits every leftmost derivation.
class Search {
 public:
  Search(const Grammar& g, const Sentence& w) : g_(g), w_(w), eps_(g.has_epsilon_rules()) {}

  Outcome explore(const Amrs& form, std::size_t p, std::size_t remaining) {
    ++states_;
    const std::size_t len = form.length(), n = w_.size();
    if (!eps_ && len > n) return Outcome::NotFound;
    if (p == len) {
      if (len != n) return Outcome::NotFound;
      found_ = path_;
      final_ = form;
      return Outcome::Found;
    }
    State key{form, p};
    if (on_path_.count(key)) return Outcome::NotFound;
    if (auto m = memo_.find(key); m != memo_.end() && m->second.first >= remaining) return m->second.second;
    on_path_.insert(key);

    Outcome best = Outcome::NotFound;
    auto settle = [&](Outcome o) {
      if (o == Outcome::Exhausted) best = Outcome::Exhausted;
      return o == Outcome::Found;
    };

    bool done = false;
    if (p < n) {
      for (const Afs& c : g_.cat(w_[p], p + 1)) {
        auto next = unify_in_context(form, p + 1, c, g_.hierarchy());
        if (next && settle(explore(*next, p + 1, remaining))) {
          done = true;
          break;
        }
      }
    }
    for (std::size_t r = 0; !done && r < g_.rules().size(); ++r) {
      auto next = strong_derive_step(form, g_.rules()[r], p + 1, g_.hierarchy());
      if (!next || (!eps_ && next->length() > n)) continue;
      if (remaining == 0) {
        best = Outcome::Exhausted;
        break;
      }
      path_.push_back({r, p + 1, *next});
      done = settle(explore(*next, p, remaining - 1));
      path_.pop_back();
    }

    on_path_.erase(key);
    if (done) return Outcome::Found;
    memo_[key] = {remaining, best};
    return best;
  }

  void reset() {
    memo_.clear();
    on_path_.clear();
  }

  std::vector<DerivationStep> found_;
  std::optional<Amrs> final_;
  std::size_t states_ = 0;

 private:
  const Grammar& g_;
  const Sentence& w_;
  const bool eps_;
  std::vector<DerivationStep> path_;
  std::unordered_map<State, std::pair<std::size_t, Outcome>, StateHash> memo_;
  std::unordered_set<State, StateHash> on_path_;
};

}  // namespace

OracleResult derives(const Grammar& g, const Amrs& a, const Sentence& w, std::size_t max_steps) {
  g.check_words(w);
  Search s(g, w);
  OracleResult out;
  out.verdict = OracleVerdict::BudgetExhausted;
  // Iterative deepening, so the derivation reported is a shortest one.
  for (std::size_t budget = 0; budget <= max_steps; ++budget) {
    s.reset();
    Outcome o = s.explore(a, 0, budget);
    if (o == Outcome::Found) {
      out.verdict = OracleVerdict::Derivable;
      out.steps = s.found_;
      out.final_form = s.final_;
      break;
    }
    if (o == Outcome::NotFound) {
      out.verdict = OracleVerdict::NotDerivable;
      break;
    }
  }
  out.states = s.states_;
  return out;
}

OracleResult derives(const Grammar& g, const Sentence& w, std::size_t max_steps) {
  return derives(g, Amrs(g.start()), w, max_steps);
}

DerivationNode derivation_tree(const Grammar& g, const OracleResult& r, const Sentence& w) {
  if (r.verdict != OracleVerdict::Derivable) throw std::logic_error("no derivation to draw");
  struct Node {
    std::string label;
    std::vector<std::size_t> children;
    bool expanded = false;
  };
  std::vector<Node> arena{{"start", {}, false}};
  std::vector<std::size_t> frontier{0};
  for (const DerivationStep& step : r.steps) {
    const Rule& rule = g.rules()[step.rule];
    std::size_t at = frontier[step.index - 1];
    arena[at].label = rule.name;
    arena[at].expanded = true;
    std::vector<std::size_t> kids;
    for (std::size_t i = 0; i < rule.arity(); ++i) {
      kids.push_back(arena.size());
      arena.push_back({"", {}, false});
    }
    arena[at].children = kids;
    frontier.erase(frontier.begin() + static_cast<long>(step.index - 1));
    frontier.insert(frontier.begin() + static_cast<long>(step.index - 1), kids.begin(), kids.end());
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) arena[frontier[i]].label = w.at(i);

  std::size_t pos = 0;
  auto build = [&](auto& self, std::size_t id) -> DerivationNode {
    DerivationNode out;
    out.label = arena[id].label;
    out.from = pos;
    if (!arena[id].expanded) {
      out.to = ++pos;
      return out;
    }
    for (std::size_t c : arena[id].children) out.children.push_back(self(self, c));
    out.to = pos;
    return out;
  };
  return build(build, 0);
}

std::string render_tree(const DerivationNode& n) {
  std::string out;
  auto walk = [&](auto& self, const DerivationNode& x, int depth) -> void {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + x.label + " [" + std::to_string(x.from) + "-" +
           std::to_string(x.to) + "]\n";
    for (const auto& c : x.children) self(self, c, depth + 1);
  };
  walk(walk, n, 0);
  return out;
}

Json tree_json(const DerivationNode& n) {
  Json out;
  out["label"] = n.label;
  out["span"] = Json::array({n.from, n.to});
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(tree_json(c));
  out["children"] = std::move(kids);
  return out;
}

}  // namespace tfsparse
