#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tfsparse/signature.hpp"
#include "tfsparse/tfs.hpp"

namespace tfsparse {

using ClassId = std::uint32_t;

struct Arc {
  FeatureId feature;
  ClassId target;
  bool operator==(const Arc&) const = default;
  auto operator<=>(const Arc&) const = default;
};

struct GraphNode {
  TypeId type;
  std::vector<Arc> arcs;  // sorted by feature
  bool operator==(const GraphNode&) const = default;
  auto operator<=>(const GraphNode&) const = default;
};

// Quotient graph of an abstract structure: one node per path-equivalence
// class, roots in index order. Always stored in canonical form (breadth-first
// numbering from the roots in order, arcs in feature order), so two graphs
// denote the same abstract structure exactly when they compare equal.
class FeatureGraph {
 public:
  FeatureGraph() = default;

  // Renumbers into canonical form, dropping classes unreachable from roots.
  static FeatureGraph canonical(const std::vector<GraphNode>& nodes, std::span<const ClassId> roots);

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<ClassId>& roots() const { return roots_; }
  std::size_t length() const { return roots_.size(); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t hash() const { return hash_; }

  TypeId type(ClassId c) const { return nodes_[c].type; }
  std::optional<ClassId> follow(ClassId c, FeatureId f) const;
  std::optional<ClassId> follow(ClassId c, const Path& p) const;
  bool is_cyclic() const;

  bool operator==(const FeatureGraph& o) const {
    return hash_ == o.hash_ && roots_ == o.roots_ && nodes_ == o.nodes_;
  }
  // Total order on canonical forms.
  std::strong_ordering operator<=>(const FeatureGraph& o) const;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<ClassId> roots_;
  std::size_t hash_ = 0;
};

struct UnificationFailure {
  TypeId left;
  TypeId right;
  std::size_t root_index;  // 0-based index of the root the witness starts from
  Path witness;            // shortest path to the clash
};

// Morphism check for equal-length graphs: roots map index-wise, arcs are
// preserved, types may only grow.
bool graph_subsumes(const FeatureGraph& a, const FeatureGraph& b, const TypeHierarchy& h);

// Value or unification failure.
template <typename T>
class Unified {
 public:
  Unified(T value) : v_(std::move(value)) {}
  Unified(UnificationFailure f) : v_(std::move(f)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }
  const T& value() const& {
    if (!ok()) throw std::logic_error("unification failed");
    return std::get<0>(v_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("unification failed");
    return std::get<0>(std::move(v_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }
  const UnificationFailure& failure() const { return std::get<1>(v_); }

 private:
  std::variant<T, UnificationFailure> v_;
};

// Destructive union-find unifier over a scratch node pool. Graphs are copied
// in with `append`; `extract` reads back a canonical graph from any roots.
class MergeEngine {
 public:
  explicit MergeEngine(const TypeHierarchy& h) : h_(h) {}

  ClassId add_node(TypeId type);
  // Offset of g's class 0 inside the pool.
  ClassId append(const FeatureGraph& g);

  ClassId find(ClassId c) const;
  TypeId type(ClassId c) const { return type_[find(c)]; }
  std::optional<ClassId> follow(ClassId c, FeatureId f) const;

  // Each returns false after a clash; the engine is then unusable except for
  // `failure`.
  bool constrain(ClassId c, TypeId type);
  bool unify(ClassId a, ClassId b);
  bool add_arc(ClassId from, FeatureId f, ClassId to);
  // Target of the f-arc, created with type bot when missing.
  ClassId arc_target(ClassId from, FeatureId f);

  bool failed() const { return clash_.has_value(); }
  FeatureGraph extract(std::span<const ClassId> roots) const;
  UnificationFailure failure(std::span<const ClassId> roots) const;

 private:
  struct Clash {
    ClassId a, b;
    TypeId ta, tb;
  };

  const TypeHierarchy& h_;
  mutable std::vector<ClassId> parent_;
  std::vector<TypeId> type_;
  std::vector<std::vector<Arc>> arcs_;
  std::optional<Clash> clash_;
};

}  // namespace tfsparse
