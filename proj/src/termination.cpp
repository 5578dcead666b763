#include "tfsparse/termination.hpp"

#include <deque>
#include <set>
#include <tuple>

namespace tfsparse {

Amrs restrict(const Amrs& a, std::size_t depth) {
  const FeatureGraph& g = a.graph();
  constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.size(), kUnreached);
  std::deque<ClassId> todo;
  for (ClassId r : g.roots())
    if (dist[r] == kUnreached) {
      dist[r] = 0;
      todo.push_back(r);
    }
  while (!todo.empty()) {
    ClassId c = todo.front();
    todo.pop_front();
    for (const Arc& arc : g.nodes()[c].arcs)
      if (dist[arc.target] == kUnreached) {
        dist[arc.target] = dist[c] + 1;
        todo.push_back(arc.target);
      }
  }
  std::vector<GraphNode> nodes = g.nodes();
  for (auto& n : nodes)
    std::erase_if(n.arcs, [&](const Arc& arc) { return dist[arc.target] > depth; });
  return Amrs(FeatureGraph::canonical(nodes, g.roots()));
}

std::optional<CycleWitness> find_cycle(const Amrs& a) {
  const FeatureGraph& g = a.graph();
  std::vector<char> mark(g.size(), 0);  // 0 new, 1 on the current path, 2 done
  for (std::size_t idx = 0; idx < g.length(); ++idx) {
    ClassId r = g.roots()[idx];
    if (mark[r]) continue;
    struct Frame {
      ClassId c;
      std::size_t next;
    };
    std::vector<Frame> stack{{r, 0}};
    Path path;  // features along the stack
    mark[r] = 1;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& arcs = g.nodes()[top.c].arcs;
      if (top.next == arcs.size()) {
        mark[top.c] = 2;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const Arc arc = arcs[top.next++];
      if (mark[arc.target] == 1) {
        std::size_t at = 0;
        while (stack[at].c != arc.target) ++at;
        CycleWitness w{idx + 1, Path(path.begin(), path.begin() + static_cast<long>(at)),
                       Path(path.begin() + static_cast<long>(at), path.end())};
        w.cycle.push_back(arc.feature);
        return w;
      }
      if (mark[arc.target] == 0) {
        mark[arc.target] = 1;
        path.push_back(arc.feature);
        stack.push_back({arc.target, 0});
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string describe(const Item& item, const CycleWitness& w, const TypeHierarchy& h) {
  return "item " + std::to_string(item.id) + " [" + std::to_string(item.i) + ", " + std::to_string(item.j) +
         ", " + status_name(item.status) + "] is cyclic: element " + std::to_string(w.index) + ", path " +
         path_string(w.to_cycle, h) + " returns to itself via " + path_string(w.cycle, h);
}

}  // namespace

CyclicItemError::CyclicItemError(const Item& item, CycleWitness witness, const TypeHierarchy& h)
    : std::runtime_error(describe(item, witness, h)), item_(item), witness_(std::move(witness)) {}

void guard_acyclic(const Item& item, const TypeHierarchy& h) {
  if (auto w = find_cycle(item.structure)) throw CyclicItemError(item, *w, h);
}

std::vector<SentinelWarning> divergence_sentinel(const Chart& chart, std::size_t threshold,
                                                 const TypeHierarchy& h) {
  if (threshold < 1) throw std::invalid_argument("sentinel threshold must be at least 1");
  std::set<std::tuple<std::size_t, std::size_t, ItemStatus>> cells;
  for (const Item* it : chart.items()) cells.insert({it->i, it->j, it->status});
  std::vector<SentinelWarning> out;
  for (const auto& [i, j, s] : cells) {
    std::vector<std::size_t> ids = chart.cell(i, j, s);
    if (ids.size() <= threshold) continue;
    std::size_t minimal = 0;
    for (std::size_t x : ids) {
      bool dominated = false;
      for (std::size_t y : ids)
        if (y != x && amrs_order(chart.item(y).structure, chart.item(x).structure, h)) {
          dominated = true;
          break;
        }
      if (!dominated) ++minimal;
    }
    if (minimal > threshold)
      out.push_back({i, j, s, minimal,
                     "cell (" + std::to_string(i) + ", " + std::to_string(j) + ", " + status_name(s) + ") holds " +
                         std::to_string(minimal) + " incomparable items, above the threshold of " +
                         std::to_string(threshold)});
  }
  return out;
}

}  // namespace tfsparse
