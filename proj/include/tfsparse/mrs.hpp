#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tfsparse/afs.hpp"
#include "tfsparse/graph.hpp"
#include "tfsparse/tfs.hpp"

namespace tfsparse {

// Abstract multi-rooted structure: a sequence of abstract feature structures
// that may share sub-structure across indices. Indices are 1-based in the
// interface, as in the definitions; the empty sequence is the default.
class Amrs {
 public:
  Amrs() = default;
  explicit Amrs(FeatureGraph g) : g_(std::move(g)) {}
  explicit Amrs(const Afs& a) : g_(a.graph()) {}

  const FeatureGraph& graph() const { return g_; }
  std::size_t length() const { return g_.length(); }
  bool empty() const { return g_.length() == 0; }
  ClassId root(std::size_t i) const;
  // The structure at index i on its own, with sharing to other indices lost.
  Afs element(std::size_t i) const;
  bool is_cyclic() const { return g_.is_cyclic(); }

  bool operator==(const Amrs& o) const { return g_ == o.g_; }
  auto operator<=>(const Amrs& o) const { return g_ <=> o.g_; }

 private:
  FeatureGraph g_;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Amrs abs_mrs(const ConcreteMrs& m);
ConcreteMrs conc_mrs(const Amrs& a);

// Indices from..to inclusive, renumbered from 1; from == to + 1 gives the
// empty sequence.
Amrs substructure(const Amrs& a, std::size_t from, std::size_t to);
// No sharing is introduced between the two halves.
Amrs concat(const Amrs& a, const Amrs& b);

// Unifies index j of `a` with index j of `b` for every j in `indices`.
Unified<Amrs> unify_in_context(const Amrs& a, const std::vector<std::size_t>& indices,
                               const Amrs& b, const TypeHierarchy& h);
// Unifies index j of `a` with the single structure `b`.
Unified<Amrs> unify_in_context(const Amrs& a, std::size_t j, const Afs& b, const TypeHierarchy& h);

// a ⪯ b: same length, and a class morphism from a to b respecting roots.
bool amrs_order(const Amrs& a, const Amrs& b, const TypeHierarchy& h);

}  // namespace tfsparse

template <>
struct std::hash<tfsparse::Amrs> {
  std::size_t operator()(const tfsparse::Amrs& a) const { return a.graph().hash(); }
};
