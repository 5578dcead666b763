#include "tfsparse/tfs.hpp"

#include <atomic>
#include <deque>
#include <set>

namespace tfsparse {

std::string path_string(const Path& p, const TypeHierarchy& h) {
  if (p.empty()) return "<>";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += h.feature_name(p[i]);
  }
  return out;
}

NodeId NodeId::fresh() {
  static std::atomic<std::uint64_t> counter{1};
  return NodeId(counter.fetch_add(1, std::memory_order_relaxed));
}

NodeId ConcreteGraph::add_node(TypeId type) {
  NodeId n = NodeId::fresh();
  nodes_.emplace(n, ConcreteNode{type, {}});
  return n;
}

void ConcreteGraph::add_arc(NodeId from, FeatureId f, NodeId to) {
  auto& arcs = nodes_.at(from).arcs;
  auto [it, fresh] = arcs.emplace(f, to);
  if (!fresh && it->second != to) throw std::invalid_argument("feature arc already defined");
}

std::optional<NodeId> ConcreteGraph::arc(NodeId n, FeatureId f) const {
  const auto& arcs = nodes_.at(n).arcs;
  auto it = arcs.find(f);
  if (it == arcs.end()) return std::nullopt;
  return it->second;
}

void ConcreteGraph::prune(const std::vector<NodeId>& roots) {
  std::set<NodeId> seen;
  std::deque<NodeId> todo;
  for (NodeId r : roots) {
    if (!contains(r)) throw std::invalid_argument("root is not a node of the graph");
    if (seen.insert(r).second) todo.push_back(r);
  }
  while (!todo.empty()) {
    NodeId q = todo.front();
    todo.pop_front();
    for (const auto& [f, t] : nodes_.at(q).arcs) {
      if (!contains(t)) throw std::invalid_argument("arc points outside the graph");
      if (seen.insert(t).second) todo.push_back(t);
    }
  }
  for (auto it = nodes_.begin(); it != nodes_.end();)
    it = seen.count(it->first) ? std::next(it) : nodes_.erase(it);
}

namespace {

void check_types(const ConcreteGraph& g) {
  for (const auto& [id, node] : g.nodes())
    if (node.type == kTop) throw std::invalid_argument("node typed top");
}

}  // namespace

ConcreteTfs::ConcreteTfs(ConcreteGraph graph, NodeId root) : graph_(std::move(graph)), root_(root) {
  graph_.prune({root_});
  check_types(graph_);
}

ConcreteMrs::ConcreteMrs(ConcreteGraph graph, std::vector<NodeId> roots)
    : graph_(std::move(graph)), roots_(std::move(roots)) {
  std::set<NodeId> distinct(roots_.begin(), roots_.end());
  if (distinct.size() != roots_.size()) throw std::invalid_argument("repeated root");
  graph_.prune(roots_);
  check_types(graph_);
}

std::optional<NodeId> delta(const ConcreteTfs& a, NodeId q, const Path& p) {
  for (FeatureId f : p) {
    auto next = a.arc(q, f);
    if (!next) return std::nullopt;
    q = *next;
  }
  return q;
}

bool is_cyclic(const ConcreteTfs& a) {
  enum Mark { White, Grey, Black };
  std::map<NodeId, Mark> mark;
  // Iterative DFS with an explicit arc cursor per frame.
  struct Frame {
    NodeId node;
    std::map<FeatureId, NodeId>::const_iterator next;
  };
  std::vector<Frame> stack;
  auto push = [&](NodeId n) {
    mark[n] = Grey;
    stack.push_back({n, a.graph().nodes().at(n).arcs.begin()});
  };
  push(a.root());
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto& arcs = a.graph().nodes().at(top.node).arcs;
    if (top.next == arcs.end()) {
      mark[top.node] = Black;
      stack.pop_back();
      continue;
    }
    NodeId t = (top.next++)->second;
    Mark m = mark.count(t) ? mark[t] : White;
    if (m == Grey) return true;
    if (m == White) push(t);
  }
  return false;
}

std::optional<NodeMap> tfs_subsumes(const ConcreteTfs& a, const ConcreteTfs& b,
                                    const TypeHierarchy& h) {
  NodeMap m;
  std::deque<NodeId> todo{a.root()};
  m.emplace(a.root(), b.root());
  while (!todo.empty()) {
    NodeId x = todo.front();
    todo.pop_front();
    NodeId y = m.at(x);
    if (!h.subsumes(a.type_of(x), b.type_of(y))) return std::nullopt;
    for (const auto& [f, xt] : a.graph().nodes().at(x).arcs) {
      auto yt = b.arc(y, f);
      if (!yt) return std::nullopt;
      auto [it, fresh] = m.emplace(xt, *yt);
      if (fresh)
        todo.push_back(xt);
      else if (it->second != *yt)
        return std::nullopt;
    }
  }
  return m;
}

bool alphabetic_variant(const ConcreteTfs& a, const ConcreteTfs& b, const TypeHierarchy& h) {
  auto ab = tfs_subsumes(a, b, h);
  if (!ab || a.size() != b.size()) return false;
  // A surjective morphism between equally sized node sets is a bijection;
  // subsumption both ways then forces equal types.
  std::set<NodeId> image;
  for (const auto& [x, y] : *ab) image.insert(y);
  return image.size() == b.size() && tfs_subsumes(b, a, h).has_value();
}

ConcreteTfs rename_nodes(const ConcreteTfs& a) {
  ConcreteGraph g;
  std::map<NodeId, NodeId> fresh;
  for (const auto& [id, node] : a.graph().nodes()) fresh.emplace(id, g.add_node(node.type));
  for (const auto& [id, node] : a.graph().nodes())
    for (const auto& [f, t] : node.arcs) g.add_arc(fresh.at(id), f, fresh.at(t));
  return ConcreteTfs(std::move(g), fresh.at(a.root()));
}

std::uint64_t rank(const ConcreteTfs& a, const std::function<std::uint64_t(TypeId)>& r) {
  if (is_cyclic(a)) throw CyclicStructure("rank is undefined for a cyclic structure");
  // Count the paths reaching each node, visiting nodes in topological order.
  std::map<NodeId, int> indegree;
  for (const auto& [id, node] : a.graph().nodes()) {
    indegree.try_emplace(id, 0);
    for (const auto& [f, t] : node.arcs) ++indegree[t];
  }
  std::map<NodeId, std::uint64_t> paths;
  paths[a.root()] = 1;
  std::vector<NodeId> ready{a.root()};
  std::uint64_t total_paths = 0, type_sum = 0;
  while (!ready.empty()) {
    NodeId q = ready.back();
    ready.pop_back();
    std::uint64_t count = paths[q];
    total_paths += count;
    type_sum += count * r(a.type_of(q));
    for (const auto& [f, t] : a.graph().nodes().at(q).arcs) {
      paths[t] += count;
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  return total_paths - a.size() + type_sum;
}

std::uint64_t rank(const ConcreteTfs& a, const TypeHierarchy& h) {
  return rank(a, [&h](TypeId t) -> std::uint64_t { return h.height(t) + 1; });
}

}  // namespace tfsparse
