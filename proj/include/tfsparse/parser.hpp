#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfsparse/grammar.hpp"
#include "tfsparse/mrs.hpp"

namespace tfsparse {

enum class ItemStatus { Act, Comp };

// Which case of the step operator produced an item.
enum class StepCase { DotMovement, Completion, Prediction, EpsilonRule, Scanning };

const char* status_name(ItemStatus s);
const char* case_name(StepCase c);

struct Provenance {
  StepCase origin;
  std::optional<std::size_t> rule;  // index into Grammar::rules()
  std::vector<std::size_t> parents;  // item ids
  std::optional<std::size_t> word;   // 1-based position, scanning only
};

struct Item {
  std::size_t id = 0;
  std::size_t i = 0, j = 0;
  ItemStatus status = ItemStatus::Act;
  Amrs structure;
  std::size_t iteration = 0;  // first chart I_m containing the item
  Provenance provenance{StepCase::Prediction, {}, {}, {}};
};

// Deterministic order: (i, j, status, canonical form).
bool canonical_less(const Item& a, const Item& b);

// Items deduplicated on (i, j, status, canonical form). Ids are positions in
// insertion order and stay stable when items are removed.
class Chart {
 public:
  // Returns the new id, or nothing if an equal item is present.
  std::optional<std::size_t> insert(Item item);
  void erase(std::size_t id);
  bool contains(std::size_t i, std::size_t j, ItemStatus s, const Amrs& a) const;
  std::optional<std::size_t> find(std::size_t i, std::size_t j, ItemStatus s, const Amrs& a) const;

  const Item& item(std::size_t id) const { return slots_.at(id).value(); }
  bool live(std::size_t id) const { return id < slots_.size() && slots_[id].has_value(); }
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return slots_.size(); }
  // Live items in id order.
  std::vector<const Item*> items() const;
  // Live ids in the (i, j, status) cell.
  std::vector<std::size_t> cell(std::size_t i, std::size_t j, ItemStatus s) const;

 private:
  struct Key {
    std::size_t i, j;
    ItemStatus s;
    Amrs a;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  struct CellHash {
    std::size_t operator()(const std::tuple<std::size_t, std::size_t, ItemStatus>& c) const;
  };

  std::vector<std::optional<Item>> slots_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
  std::unordered_map<std::tuple<std::size_t, std::size_t, ItemStatus>, std::vector<std::size_t>, CellHash> cells_;
  std::size_t count_ = 0;
};

struct ComputationConfig {
  bool subsumption_filter = true;
  std::size_t max_iterations = 100;
  bool acyclicity_guard = true;
  bool early_exit = true;
  // Cells with more pairwise incomparable items than this raise a warning;
  // 0 turns the sentinel off.
  std::size_t sentinel_threshold = 0;
};

enum class Verdict { Accepted, Rejected, BudgetExhausted };
const char* verdict_name(Verdict v);

struct ComputationResult {
  Verdict verdict = Verdict::Rejected;
  std::size_t iterations = 0;
  Chart chart;
  std::optional<Item> witness;
  std::vector<std::string> warnings;
};

// The candidate items of one application of the step operator to `chart`:
// every item of the five cases, without deduplication against the input.
// Provenance parents refer to ids in `chart`.
std::vector<Item> t_step(const Chart& chart, const Grammar& g, const Sentence& w);

// Iterates I_{m+1} = I_m ∪ T(I_m) from the empty chart. Throws UnknownWord,
// and CyclicItemError when the acyclicity guard is on.
ComputationResult run(const Grammar& g, const Sentence& w, const ComputationConfig& cfg);

// First qualifying [0, A, n, COMP] by iteration, then canonical order.
std::optional<Item> success(const Chart& chart, const Grammar& g, std::size_t n);

// Keeps, per cell, only ⪯-minimal items.
Chart filter_subsume(const Chart& chart, const TypeHierarchy& h);

}  // namespace tfsparse
