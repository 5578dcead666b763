#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfsparse/mrs.hpp"
#include "tfsparse/parser.hpp"

namespace tfsparse {

// Depth truncation: classes first reached by paths longer than `depth` are
// dropped together with the arcs into them. Always generalises its input.
Amrs restrict(const Amrs& a, std::size_t depth);

struct CycleWitness {
  std::size_t index;  // 1-based element the cycle is reachable from
  Path to_cycle;      // from that root to the first node on the cycle
  Path cycle;         // non-empty path leading back to that node
};

std::optional<CycleWitness> find_cycle(const Amrs& a);

class CyclicItemError : public std::runtime_error {
 public:
  CyclicItemError(const Item& item, CycleWitness witness, const TypeHierarchy& h);
  const Item& item() const { return item_; }
  const CycleWitness& witness() const { return witness_; }

 private:
  Item item_;
  CycleWitness witness_;
};

// Throws CyclicItemError if the item's structure is cyclic.
void guard_acyclic(const Item& item, const TypeHierarchy& h);

struct SentinelWarning {
  std::size_t i, j;
  ItemStatus status;
  std::size_t incomparable;  // size of the ⪯-minimal antichain in the cell
  std::string message;
};

// Cells whose ⪯-minimal items number more than `threshold`.
std::vector<SentinelWarning> divergence_sentinel(const Chart& chart, std::size_t threshold,
                                                 const TypeHierarchy& h);

}  // namespace tfsparse
