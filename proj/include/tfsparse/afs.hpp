#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tfsparse/graph.hpp"
#include "tfsparse/signature.hpp"
#include "tfsparse/tfs.hpp"

namespace tfsparse {

// Abstract feature structure: a concrete structure up to renaming of nodes,
// held as its canonical quotient graph.
class Afs {
 public:
  // Throws std::invalid_argument unless g has exactly one root.
  explicit Afs(FeatureGraph g);
  static Afs atomic(TypeId type);

  const FeatureGraph& graph() const { return g_; }
  ClassId root() const { return g_.roots().front(); }
  TypeId root_type() const { return g_.type(root()); }
  std::size_t class_count() const { return g_.size(); }

  std::optional<ClassId> class_at(const Path& p) const { return g_.follow(root(), p); }
  std::optional<TypeId> type_at(const Path& p) const;
  // Both paths defined and in the same class.
  bool equivalent(const Path& p, const Path& q) const;
  bool is_cyclic() const { return g_.is_cyclic(); }

  bool operator==(const Afs& o) const { return g_ == o.g_; }
  auto operator<=>(const Afs& o) const { return g_ <=> o.g_; }

 private:
  FeatureGraph g_;
};

Afs abs(const ConcreteTfs& a);
ConcreteTfs conc(const Afs& a);

// Path-set presentation before normalisation. `typing` is a relation: a
// path may carry several type constraints (they are joined) or none (bot).
struct PreAfs {
  std::set<Path> paths;
  std::set<std::pair<Path, TypeId>> typing;
  std::set<std::pair<Path, Path>> equivalences;
};

class CyclicClosure : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Literal closure over path sets: congruence closure, then per-class join of
// types. Throws std::invalid_argument if the paths are not prefix-closed or
// mention paths outside the set, CyclicClosure if the closure is infinite.
Unified<Afs> normalize(const PreAfs& pre, const TypeHierarchy& h);

// Every path, typed, with each path equated to its class representative.
// Throws CyclicStructure for cyclic input.
PreAfs to_pre_afs(const Afs& a);
// Componentwise union of two presentations.
PreAfs merge(const PreAfs& a, const PreAfs& b);

Unified<Afs> afs_unify(const Afs& a, const Afs& b, const TypeHierarchy& h);
// a ⪯ b: a is more general.
bool afs_order(const Afs& a, const Afs& b, const TypeHierarchy& h);

}  // namespace tfsparse

template <>
struct std::hash<tfsparse::Afs> {
  std::size_t operator()(const tfsparse::Afs& a) const { return a.graph().hash(); }
};
