#include "tfsparse/parser.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "tfsparse/termination.hpp"

namespace tfsparse {

const char* status_name(ItemStatus s) { return s == ItemStatus::Act ? "ACT" : "COMP"; }

const char* case_name(StepCase c) {
  switch (c) {
    case StepCase::DotMovement: return "dot-movement";
    case StepCase::Completion: return "completion";
    case StepCase::Prediction: return "prediction";
    case StepCase::EpsilonRule: return "epsilon-rule";
    case StepCase::Scanning: return "scanning";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

bool canonical_less(const Item& a, const Item& b) {
  if (std::tie(a.i, a.j, a.status) != std::tie(b.i, b.j, b.status))
    return std::tie(a.i, a.j, a.status) < std::tie(b.i, b.j, b.status);
  return a.structure < b.structure;
}

// ---------------------------------------------------------------------------
// Chart

std::size_t Chart::KeyHash::operator()(const Key& k) const {
  return k.a.graph().hash() ^ (k.i * 0x9e3779b1u) ^ (k.j * 0x85ebca6bu) ^ static_cast<std::size_t>(k.s);
}

std::size_t Chart::CellHash::operator()(const std::tuple<std::size_t, std::size_t, ItemStatus>& c) const {
  return std::get<0>(c) * 0x9e3779b1u ^ std::get<1>(c) * 0x85ebca6bu ^ static_cast<std::size_t>(std::get<2>(c));
}

std::optional<std::size_t> Chart::insert(Item item) {
  Key key{item.i, item.j, item.status, item.structure};
  if (index_.count(key)) return std::nullopt;
  std::size_t id = slots_.size();
  item.id = id;
  index_.emplace(std::move(key), id);
  cells_[{item.i, item.j, item.status}].push_back(id);
  slots_.push_back(std::move(item));
  ++count_;
  return id;
}

void Chart::erase(std::size_t id) {
  const Item& it = item(id);
  index_.erase(Key{it.i, it.j, it.status, it.structure});
  auto& ids = cells_[{it.i, it.j, it.status}];
  ids.erase(std::find(ids.begin(), ids.end(), id));
  slots_[id].reset();
  --count_;
}

std::optional<std::size_t> Chart::find(std::size_t i, std::size_t j, ItemStatus s, const Amrs& a) const {
  auto it = index_.find(Key{i, j, s, a});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Chart::contains(std::size_t i, std::size_t j, ItemStatus s, const Amrs& a) const {
  return find(i, j, s, a).has_value();
}

std::vector<const Item*> Chart::items() const {
  std::vector<const Item*> out;
  out.reserve(count_);
  for (const auto& slot : slots_)
    if (slot) out.push_back(&*slot);
  return out;
}

std::vector<std::size_t> Chart::cell(std::size_t i, std::size_t j, ItemStatus s) const {
  auto it = cells_.find({i, j, s});
  if (it == cells_.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// The step operator

namespace {

std::vector<std::size_t> prefix_indices(std::size_t k) {
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = i + 1;
  return out;
}

// (R, {1..k}) ⊔ A_α, shared by every β paired with α under one rule.
using PrefixCache = std::map<std::pair<std::size_t, std::size_t>, std::optional<Amrs>>;

class Generator {
 public:
  Generator(const Grammar& g, const Sentence& w, const Chart& chart, PrefixCache* cache)
      : g_(g), w_(w), chart_(chart), cache_(cache) {}

  void constants(std::size_t iteration, std::vector<Item>& out) const {
    const std::size_t n = w_.size();
    for (std::size_t i = 0; i <= n; ++i)
      out.push_back(make(i, i, ItemStatus::Act, Amrs(), iteration, {StepCase::Prediction, {}, {}, {}}));
    for (std::size_t r = 0; r < g_.rules().size(); ++r) {
      const Rule& rule = g_.rules()[r];
      if (rule.length() != 1) continue;
      for (std::size_t i = 0; i <= n; ++i)
        out.push_back(make(i, i, ItemStatus::Comp, rule.structure, iteration, {StepCase::EpsilonRule, r, {}, {}}));
    }
    for (std::size_t i = 1; i <= n; ++i)
      for (const Afs& c : g_.cat(w_[i - 1], i))
        out.push_back(make(i - 1, i, ItemStatus::Comp, Amrs(c), iteration, {StepCase::Scanning, {}, {}, i}));
  }

  // Cases (1) and (2). With `fresh` set, only combinations involving at
  // least one fresh item are tried.
  void combinations(const std::vector<char>* fresh, std::size_t iteration, std::vector<Item>& out) {
    const TypeHierarchy& h = g_.hierarchy();
    std::map<std::size_t, std::vector<const Item*>> comp_from;
    std::vector<const Item*> act;
    for (const Item* it : chart_.items()) {
      if (it->status == ItemStatus::Comp)
        comp_from[it->i].push_back(it);
      else
        act.push_back(it);
    }
    auto is_fresh = [fresh](const Item* it) { return !fresh || (*fresh)[it->id]; };

    for (std::size_t r = 0; r < g_.rules().size(); ++r) {
      const Rule& rule = g_.rules()[r];
      const std::size_t m = rule.length();
      if (m < 2) continue;
      for (const Item* alpha : act) {
        const std::size_t k = alpha->structure.length();
        if (k < m - 1) {
          auto it = comp_from.find(alpha->j);
          if (it == comp_from.end()) continue;
          const Amrs* b = nullptr;
          for (const Item* beta : it->second) {
            if (!is_fresh(alpha) && !is_fresh(beta)) continue;
            if (!b) {
              b = prefix(r, *alpha);
              if (!b) break;
            }
            const Afs daughter = beta->structure.element(1);
            if (h.lub(b->graph().type(b->root(k + 1)), daughter.root_type()) == kTop) continue;
            auto c = unify_in_context(*b, k + 1, daughter, h);
            if (!c) continue;
            out.push_back(make(alpha->i, beta->j, ItemStatus::Act, substructure(*c, 1, k + 1), iteration,
                               {StepCase::DotMovement, r, {alpha->id, beta->id}, {}}));
          }
        } else if (k == m - 1 && is_fresh(alpha)) {
          const Amrs* c = prefix(r, *alpha);
          if (!c) continue;
          out.push_back(make(alpha->i, alpha->j, ItemStatus::Comp, substructure(*c, m, m), iteration,
                             {StepCase::Completion, r, {alpha->id}, {}}));
        }
      }
    }
  }

 private:
  static Item make(std::size_t i, std::size_t j, ItemStatus s, Amrs a, std::size_t iteration, Provenance p) {
    Item it;
    it.i = i;
    it.j = j;
    it.status = s;
    it.structure = std::move(a);
    it.iteration = iteration;
    it.provenance = std::move(p);
    return it;
  }

  const Amrs* prefix(std::size_t r, const Item& alpha) {
    auto key = std::make_pair(r, alpha.id);
    auto found = local_.find(key);
    if (found == local_.end() && cache_) {
      auto c = cache_->find(key);
      if (c != cache_->end()) found = local_.emplace(key, c->second).first;
    }
    if (found == local_.end()) {
      const Rule& rule = g_.rules()[r];
      auto b = unify_in_context(rule.structure, prefix_indices(alpha.structure.length()), alpha.structure,
                                g_.hierarchy());
      std::optional<Amrs> value;
      if (b) value = std::move(b).value();
      if (cache_) cache_->emplace(key, value);
      found = local_.emplace(key, std::move(value)).first;
    }
    return found->second ? &*found->second : nullptr;
  }

  const Grammar& g_;
  const Sentence& w_;
  const Chart& chart_;
  PrefixCache* cache_;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<Amrs>> local_;
};

#ifndef NDEBUG
void check_item_invariants(const Item& x, const Grammar& g) {
  if (x.status == ItemStatus::Comp && x.structure.length() != 1)
    throw std::logic_error("COMP item of length other than 1");
  const std::size_t k = x.structure.length();
  if (x.status == ItemStatus::Act && k > 0) {
    bool ok = std::any_of(g.rules().begin(), g.rules().end(), [&](const Rule& r) {
      return r.length() > k && amrs_order(substructure(r.structure, 1, k), x.structure, g.hierarchy());
    });
    if (!ok) throw std::logic_error("ACT item does not instantiate a rule prefix");
  }
}
#endif

}  // namespace

std::vector<Item> t_step(const Chart& chart, const Grammar& g, const Sentence& w) {
  g.check_words(w);
  std::vector<Item> out;
  Generator gen(g, w, chart, nullptr);
  gen.constants(0, out);
  gen.combinations(nullptr, 0, out);
  return out;
}

std::optional<Item> success(const Chart& chart, const Grammar& g, std::size_t n) {
  std::optional<Item> best;
  for (std::size_t id : chart.cell(0, n, ItemStatus::Comp)) {
    const Item& it = chart.item(id);
    if (it.structure.length() != 1) continue;
    if (!afs_unify(it.structure.element(1), g.start(), g.hierarchy())) continue;
    if (!best || it.iteration < best->iteration ||
        (it.iteration == best->iteration && canonical_less(it, *best)))
      best = it;
  }
  return best;
}

Chart filter_subsume(const Chart& chart, const TypeHierarchy& h) {
  Chart out = chart;
  std::set<std::tuple<std::size_t, std::size_t, ItemStatus>> cells;
  for (const Item* it : chart.items()) cells.insert({it->i, it->j, it->status});
  for (const auto& [i, j, s] : cells) {
    std::vector<std::size_t> ids = out.cell(i, j, s);
    for (std::size_t x : ids) {
      bool dominated = std::any_of(ids.begin(), ids.end(), [&](std::size_t y) {
        if (y == x || !out.live(y)) return false;
        const Amrs& ay = out.item(y).structure;
        const Amrs& ax = out.item(x).structure;
        // Distinct canonical forms are never mutually ⪯, so strictness is
        // simply "the other way fails".
        return amrs_order(ay, ax, h) && !amrs_order(ax, ay, h);
      });
      if (dominated) out.erase(x);
    }
  }
  return out;
}

ComputationResult run(const Grammar& g, const Sentence& w, const ComputationConfig& cfg) {
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  g.check_words(w);
  const TypeHierarchy& h = g.hierarchy();
  const std::size_t n = w.size();

  ComputationResult result;
  Chart& chart = result.chart;
  PrefixCache cache;
  std::vector<char> fresh;  // by id: inserted in the previous iteration
  std::set<std::tuple<std::size_t, std::size_t, ItemStatus>> warned;

  for (std::size_t m = 1; m <= cfg.max_iterations; ++m) {
    std::vector<Item> candidates;
    Generator gen(g, w, chart, &cache);
    if (m == 1) gen.constants(m, candidates);
    gen.combinations(&fresh, m, candidates);

    const std::size_t before = chart.capacity();
    const std::size_t live_before = chart.size();
    bool changed = false;
    for (Item& x : candidates) {
      if (chart.contains(x.i, x.j, x.status, x.structure)) continue;
      if (cfg.subsumption_filter) {
        std::vector<std::size_t> peers = chart.cell(x.i, x.j, x.status);
        bool subsumed = std::any_of(peers.begin(), peers.end(), [&](std::size_t y) {
          return amrs_order(chart.item(y).structure, x.structure, h);
        });
        if (subsumed) continue;
        for (std::size_t y : peers)
          if (amrs_order(x.structure, chart.item(y).structure, h)) chart.erase(y);
      }
      x.id = chart.capacity();
      if (cfg.acyclicity_guard) guard_acyclic(x, h);
#ifndef NDEBUG
      check_item_invariants(x, g);
#endif
      chart.insert(std::move(x));
      changed = true;
    }

    if (!cfg.subsumption_filter && (chart.size() != chart.capacity() || chart.size() < live_before))
      throw std::logic_error("chart lost items without the filter; the iteration is not monotone");

    fresh.assign(chart.capacity(), 0);
    for (std::size_t id = before; id < chart.capacity(); ++id) fresh[id] = chart.live(id);
    result.iterations = m;

    if (cfg.sentinel_threshold > 0) {
      for (auto& warn : divergence_sentinel(chart, cfg.sentinel_threshold, h))
        if (warned.insert({warn.i, warn.j, warn.status}).second) result.warnings.push_back(warn.message);
    }

    if (cfg.early_exit || !changed) {
      if (auto win = success(chart, g, n)) {
        result.verdict = Verdict::Accepted;
        result.witness = std::move(win);
        return result;
      }
    }
    if (!changed) {
      result.verdict = Verdict::Rejected;
      return result;
    }
  }
  if (auto win = success(chart, g, n)) {
    result.verdict = Verdict::Accepted;
    result.witness = std::move(win);
  } else {
    result.verdict = Verdict::BudgetExhausted;
  }
  return result;
}

}  // namespace tfsparse
