#include "tfsparse/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace tfsparse {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

auto arc_lookup(const std::vector<Arc>& arcs, FeatureId f) {
  return std::lower_bound(arcs.begin(), arcs.end(), f,
                          [](const Arc& a, FeatureId g) { return a.feature < g; });
}

}  // namespace

FeatureGraph FeatureGraph::canonical(const std::vector<GraphNode>& nodes,
                                     std::span<const ClassId> roots) {
  constexpr ClassId kUnset = static_cast<ClassId>(-1);
  std::vector<ClassId> renumber(nodes.size(), kUnset);
  std::vector<ClassId> order;
  auto visit = [&](ClassId c) {
    if (renumber[c] == kUnset) {
      renumber[c] = static_cast<ClassId>(order.size());
      order.push_back(c);
    }
    return renumber[c];
  };

  // Targets are numbered in feature order whatever order the input arcs have.
  auto sorted_arcs = [&](ClassId c) {
    std::vector<Arc> arcs = nodes[c].arcs;
    std::sort(arcs.begin(), arcs.end());
    return arcs;
  };

  FeatureGraph g;
  for (ClassId r : roots) g.roots_.push_back(visit(r));
  g.nodes_.reserve(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    GraphNode n{nodes[order[i]].type, sorted_arcs(order[i])};
    for (Arc& a : n.arcs) a.target = visit(a.target);
    g.nodes_.push_back(std::move(n));
  }

  std::size_t h = g.roots_.size();
  for (ClassId r : g.roots_) h = mix(h, r);
  for (const auto& n : g.nodes_) {
    h = mix(h, n.type);
    for (const Arc& a : n.arcs) h = mix(mix(h, a.feature), a.target);
    h = mix(h, 0xffff);
  }
  g.hash_ = h;
  return g;
}

std::optional<ClassId> FeatureGraph::follow(ClassId c, FeatureId f) const {
  const auto& arcs = nodes_[c].arcs;
  auto it = arc_lookup(arcs, f);
  if (it == arcs.end() || it->feature != f) return std::nullopt;
  return it->target;
}

std::optional<ClassId> FeatureGraph::follow(ClassId c, const Path& p) const {
  std::optional<ClassId> cur = c;
  for (FeatureId f : p) {
    cur = follow(*cur, f);
    if (!cur) break;
  }
  return cur;
}

bool FeatureGraph::is_cyclic() const {
  std::vector<char> mark(nodes_.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<ClassId, std::size_t>> stack;
  for (ClassId r : roots_) {
    if (mark[r]) continue;
    mark[r] = 1;
    stack.push_back({r, 0});
    while (!stack.empty()) {
      auto& [c, next] = stack.back();
      if (next == nodes_[c].arcs.size()) {
        mark[c] = 2;
        stack.pop_back();
        continue;
      }
      ClassId t = nodes_[c].arcs[next++].target;
      if (mark[t] == 1) return true;
      if (mark[t] == 0) {
        mark[t] = 1;
        stack.push_back({t, 0});
      }
    }
  }
  return false;
}

std::strong_ordering FeatureGraph::operator<=>(const FeatureGraph& o) const {
  if (auto c = roots_ <=> o.roots_; c != 0) return c;
  return nodes_ <=> o.nodes_;
}

bool graph_subsumes(const FeatureGraph& a, const FeatureGraph& b, const TypeHierarchy& h) {
  if (a.length() != b.length()) return false;
  constexpr ClassId kUnset = static_cast<ClassId>(-1);
  std::vector<ClassId> image(a.size(), kUnset);
  std::vector<ClassId> todo;
  for (std::size_t i = 0; i < a.length(); ++i) {
    ClassId x = a.roots()[i], y = b.roots()[i];
    if (image[x] == kUnset) {
      image[x] = y;
      todo.push_back(x);
    } else if (image[x] != y) {
      return false;
    }
  }
  while (!todo.empty()) {
    ClassId x = todo.back();
    todo.pop_back();
    ClassId y = image[x];
    if (!h.subsumes(a.type(x), b.type(y))) return false;
    for (const Arc& arc : a.nodes()[x].arcs) {
      auto yt = b.follow(y, arc.feature);
      if (!yt) return false;
      if (image[arc.target] == kUnset) {
        image[arc.target] = *yt;
        todo.push_back(arc.target);
      } else if (image[arc.target] != *yt) {
        return false;
      }
    }
  }
  return true;
}

ClassId MergeEngine::add_node(TypeId type) {
  ClassId c = static_cast<ClassId>(parent_.size());
  parent_.push_back(c);
  type_.push_back(type);
  arcs_.emplace_back();
  return c;
}

ClassId MergeEngine::append(const FeatureGraph& g) {
  ClassId base = static_cast<ClassId>(parent_.size());
  for (const auto& n : g.nodes()) {
    ClassId c = add_node(n.type);
    arcs_[c] = n.arcs;
    for (Arc& a : arcs_[c]) a.target += base;
  }
  return base;
}

ClassId MergeEngine::find(ClassId c) const {
  ClassId r = c;
  while (parent_[r] != r) r = parent_[r];
  while (parent_[c] != r) {
    ClassId next = parent_[c];
    parent_[c] = r;
    c = next;
  }
  return r;
}

std::optional<ClassId> MergeEngine::follow(ClassId c, FeatureId f) const {
  const auto& arcs = arcs_[find(c)];
  auto it = arc_lookup(arcs, f);
  if (it == arcs.end() || it->feature != f) return std::nullopt;
  return find(it->target);
}

bool MergeEngine::constrain(ClassId c, TypeId type) {
  if (clash_) return false;
  c = find(c);
  TypeId t = h_.lub(type_[c], type);
  if (t == kTop) {
    clash_ = Clash{c, c, type_[c], type};
    return false;
  }
  type_[c] = t;
  return true;
}

bool MergeEngine::unify(ClassId a, ClassId b) {
  if (clash_) return false;
  std::vector<std::pair<ClassId, ClassId>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = find(x);
    y = find(y);
    if (x == y) continue;
    TypeId t = h_.lub(type_[x], type_[y]);
    if (t == kTop) {
      clash_ = Clash{x, y, type_[x], type_[y]};
      return false;
    }
    if (arcs_[x].size() < arcs_[y].size()) std::swap(x, y);
    parent_[y] = x;
    type_[x] = t;
    std::vector<Arc> moved = std::move(arcs_[y]);
    arcs_[y].clear();
    auto& keep = arcs_[x];
    for (const Arc& a : moved) {
      auto it = arc_lookup(keep, a.feature);
      if (it != keep.end() && it->feature == a.feature)
        work.push_back({it->target, a.target});
      else
        keep.insert(it, a);
    }
  }
  return true;
}

bool MergeEngine::add_arc(ClassId from, FeatureId f, ClassId to) {
  if (clash_) return false;
  from = find(from);
  auto& arcs = arcs_[from];
  auto it = arc_lookup(arcs, f);
  if (it != arcs.end() && it->feature == f) return unify(it->target, to);
  arcs.insert(it, Arc{f, to});
  return true;
}

ClassId MergeEngine::arc_target(ClassId from, FeatureId f) {
  if (auto t = follow(from, f)) return *t;
  ClassId t = add_node(h_.bottom());
  add_arc(from, f, t);
  return t;
}

FeatureGraph MergeEngine::extract(std::span<const ClassId> roots) const {
  if (clash_) throw std::logic_error("extract after a failed unification");
  // Collect reachable representatives, then hand them to the canonicaliser.
  std::vector<ClassId> local(parent_.size(), static_cast<ClassId>(-1));
  std::vector<ClassId> order;
  auto visit = [&](ClassId c) {
    c = find(c);
    if (local[c] == static_cast<ClassId>(-1)) {
      local[c] = static_cast<ClassId>(order.size());
      order.push_back(c);
    }
    return local[c];
  };
  std::vector<ClassId> local_roots;
  for (ClassId r : roots) local_roots.push_back(visit(r));
  std::vector<GraphNode> nodes;
  for (std::size_t i = 0; i < order.size(); ++i) {
    ClassId c = order[i];
    GraphNode n{type_[c], {}};
    for (const Arc& a : arcs_[c]) n.arcs.push_back({a.feature, visit(a.target)});
    nodes.push_back(std::move(n));
  }
  return FeatureGraph::canonical(nodes, local_roots);
}

UnificationFailure MergeEngine::failure(std::span<const ClassId> roots) const {
  if (!clash_) throw std::logic_error("no unification failure recorded");
  UnificationFailure out{clash_->ta, clash_->tb, 0, {}};
  // Breadth-first search over the partially merged pool for the shortest
  // path to either side of the clash.
  ClassId ta = find(clash_->a), tb = find(clash_->b);
  std::vector<char> seen(parent_.size(), 0);
  struct Entry {
    ClassId c;
    std::size_t root;
    Path path;
  };
  std::deque<Entry> todo;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ClassId r = find(roots[i]);
    if (!seen[r]) {
      seen[r] = 1;
      todo.push_back({r, i, {}});
    }
  }
  while (!todo.empty()) {
    Entry e = std::move(todo.front());
    todo.pop_front();
    if (e.c == ta || e.c == tb) {
      out.root_index = e.root;
      out.witness = std::move(e.path);
      return out;
    }
    for (const Arc& a : arcs_[e.c]) {
      ClassId t = find(a.target);
      if (seen[t]) continue;
      seen[t] = 1;
      Path p = e.path;
      p.push_back(a.feature);
      todo.push_back({t, e.root, std::move(p)});
    }
  }
  return out;
}

}  // namespace tfsparse
