#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfsparse/signature.hpp"

namespace tfsparse {

using Path = std::vector<FeatureId>;

// "HEAD.AGR.NUM"; the empty path prints as "<>".
std::string path_string(const Path& p, const TypeHierarchy& h);

// Node identity inside a concrete structure. Ids come from a process-wide
// counter, so two independently built structures never share nodes.
class NodeId {
 public:
  static NodeId fresh();
  std::uint64_t value() const { return value_; }
  auto operator<=>(const NodeId&) const = default;

 private:
  explicit NodeId(std::uint64_t v) : value_(v) {}
  std::uint64_t value_;
};

struct ConcreteNode {
  TypeId type;
  std::map<FeatureId, NodeId> arcs;
};

class ConcreteGraph {
 public:
  NodeId add_node(TypeId type);
  // Throws std::invalid_argument if `from` already has a different f-arc.
  void add_arc(NodeId from, FeatureId f, NodeId to);
  void set_type(NodeId n, TypeId type) { nodes_.at(n).type = type; }

  bool contains(NodeId n) const { return nodes_.count(n) != 0; }
  TypeId type_of(NodeId n) const { return nodes_.at(n).type; }
  std::optional<NodeId> arc(NodeId n, FeatureId f) const;
  const std::map<NodeId, ConcreteNode>& nodes() const { return nodes_; }

  // Keeps only the nodes reachable from `roots`.
  void prune(const std::vector<NodeId>& roots);

 private:
  std::map<NodeId, ConcreteNode> nodes_;
};

class ConcreteTfs {
 public:
  // Drops unreachable nodes. Throws std::invalid_argument for a missing root,
  // dangling arcs, or a node typed top.
  ConcreteTfs(ConcreteGraph graph, NodeId root);

  NodeId root() const { return root_; }
  const ConcreteGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.nodes().size(); }
  TypeId type_of(NodeId n) const { return graph_.type_of(n); }
  std::optional<NodeId> arc(NodeId n, FeatureId f) const { return graph_.arc(n, f); }

 private:
  ConcreteGraph graph_;
  NodeId root_;
};

// A sequence of rooted structures over one shared node space.
class ConcreteMrs {
 public:
  ConcreteMrs(ConcreteGraph graph, std::vector<NodeId> roots);

  const std::vector<NodeId>& roots() const { return roots_; }
  const ConcreteGraph& graph() const { return graph_; }
  std::size_t length() const { return roots_.size(); }

 private:
  ConcreteGraph graph_;
  std::vector<NodeId> roots_;
};

class CyclicStructure : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::optional<NodeId> delta(const ConcreteTfs& a, NodeId q, const Path& p);
bool is_cyclic(const ConcreteTfs& a);

using NodeMap = std::map<NodeId, NodeId>;

// The unique root-preserving morphism witnessing a ⊑ b, if there is one.
std::optional<NodeMap> tfs_subsumes(const ConcreteTfs& a, const ConcreteTfs& b,
                                    const TypeHierarchy& h);
bool alphabetic_variant(const ConcreteTfs& a, const ConcreteTfs& b, const TypeHierarchy& h);

// Same shape, fresh node ids.
ConcreteTfs rename_nodes(const ConcreteTfs& a);

// (|paths| - |nodes|) + sum over paths of r(type at path). Throws
// CyclicStructure, since a cyclic structure has infinitely many paths.
std::uint64_t rank(const ConcreteTfs& a, const std::function<std::uint64_t(TypeId)>& r);
// With r(t) = height(t) + 1. A zero for bot would let a new bot-typed leaf
// leave the rank unchanged.
std::uint64_t rank(const ConcreteTfs& a, const TypeHierarchy& h);

}  // namespace tfsparse
