#include "tfsparse/mrs.hpp"

#include <map>
#include <set>
#include <string>

namespace tfsparse {

ClassId Amrs::root(std::size_t i) const {
  if (i < 1 || i > length())
    throw IndexOutOfRange("index " + std::to_string(i) + " outside 1.." + std::to_string(length()));
  return g_.roots()[i - 1];
}

Afs Amrs::element(std::size_t i) const {
  ClassId r = root(i);
  return Afs(FeatureGraph::canonical(g_.nodes(), std::span<const ClassId>(&r, 1)));
}

Amrs abs_mrs(const ConcreteMrs& m) {
  std::map<NodeId, ClassId> index;
  for (const auto& [id, node] : m.graph().nodes()) index.emplace(id, static_cast<ClassId>(index.size()));
  std::vector<GraphNode> nodes;
  for (const auto& [id, node] : m.graph().nodes()) {
    GraphNode n{node.type, {}};
    for (const auto& [f, t] : node.arcs) n.arcs.push_back({f, index.at(t)});
    nodes.push_back(std::move(n));
  }
  std::vector<ClassId> roots;
  for (NodeId r : m.roots()) roots.push_back(index.at(r));
  return Amrs(FeatureGraph::canonical(nodes, roots));
}

ConcreteMrs conc_mrs(const Amrs& a) {
  // Concrete roots must be distinct nodes, so indices sharing a root class
  // cannot be represented.
  std::set<ClassId> distinct(a.graph().roots().begin(), a.graph().roots().end());
  if (distinct.size() != a.length())
    throw std::invalid_argument("indices share a root; no concrete counterpart");
  ConcreteGraph g;
  std::vector<NodeId> ids;
  for (const auto& n : a.graph().nodes()) ids.push_back(g.add_node(n.type));
  for (ClassId c = 0; c < a.graph().size(); ++c)
    for (const Arc& arc : a.graph().nodes()[c].arcs) g.add_arc(ids[c], arc.feature, ids[arc.target]);
  std::vector<NodeId> roots;
  for (ClassId r : a.graph().roots()) roots.push_back(ids[r]);
  return ConcreteMrs(std::move(g), std::move(roots));
}

Amrs substructure(const Amrs& a, std::size_t from, std::size_t to) {
  if (from < 1 || to > a.length() || from > to + 1)
    throw IndexOutOfRange("substructure " + std::to_string(from) + ".." + std::to_string(to) +
                          " of a length-" + std::to_string(a.length()) + " structure");
  std::vector<ClassId> roots(a.graph().roots().begin() + static_cast<long>(from - 1),
                             a.graph().roots().begin() + static_cast<long>(to));
  return Amrs(FeatureGraph::canonical(a.graph().nodes(), roots));
}

Amrs concat(const Amrs& a, const Amrs& b) {
  std::vector<GraphNode> nodes = a.graph().nodes();
  const ClassId base = static_cast<ClassId>(nodes.size());
  for (GraphNode n : b.graph().nodes()) {
    for (Arc& arc : n.arcs) arc.target += base;
    nodes.push_back(std::move(n));
  }
  std::vector<ClassId> roots = a.graph().roots();
  for (ClassId r : b.graph().roots()) roots.push_back(r + base);
  return Amrs(FeatureGraph::canonical(nodes, roots));
}

Unified<Amrs> unify_in_context(const Amrs& a, const std::vector<std::size_t>& indices,
                               const Amrs& b, const TypeHierarchy& h) {
  for (std::size_t j : indices)
    if (j < 1 || j > a.length() || j > b.length())
      throw AlignmentError("index " + std::to_string(j) + " is not shared by both structures");
  MergeEngine e(h);
  const ClassId oa = e.append(a.graph());
  const ClassId ob = e.append(b.graph());
  std::vector<ClassId> roots;
  for (ClassId r : a.graph().roots()) roots.push_back(oa + r);
  for (std::size_t j : indices) {
    if (!e.unify(oa + a.root(j), ob + b.root(j))) {
      for (ClassId r : b.graph().roots()) roots.push_back(ob + r);
      return e.failure(roots);
    }
  }
  return Amrs(e.extract(roots));
}

Unified<Amrs> unify_in_context(const Amrs& a, std::size_t j, const Afs& b, const TypeHierarchy& h) {
  if (j < 1 || j > a.length())
    throw AlignmentError("index " + std::to_string(j) + " outside 1.." + std::to_string(a.length()));
  MergeEngine e(h);
  const ClassId oa = e.append(a.graph());
  const ClassId ob = e.append(b.graph());
  std::vector<ClassId> roots;
  for (ClassId r : a.graph().roots()) roots.push_back(oa + r);
  if (!e.unify(oa + a.root(j), ob + b.root())) return e.failure(roots);
  return Amrs(e.extract(roots));
}

bool amrs_order(const Amrs& a, const Amrs& b, const TypeHierarchy& h) {
  return graph_subsumes(a.graph(), b.graph(), h);
}

}  // namespace tfsparse
