#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tfsparse {

using TypeId = std::uint32_t;
using FeatureId = std::uint32_t;

// Result of joining inconsistent types. Never stored in a structure.
inline constexpr TypeId kTop = std::numeric_limits<TypeId>::max();

struct TypeDecl {
  std::string name;
  std::vector<std::string> subtypes;
};

enum class SignatureErrorKind { Cycle, NotBoundedComplete, DuplicateType };

class SignatureError : public std::runtime_error {
 public:
  SignatureError(SignatureErrorKind kind, std::vector<std::string> culprits, const std::string& what)
      : std::runtime_error(what), kind_(kind), culprits_(std::move(culprits)) {}

  SignatureErrorKind kind() const { return kind_; }
  const std::vector<std::string>& culprits() const { return culprits_; }

 private:
  SignatureErrorKind kind_;
  std::vector<std::string> culprits_;
};

// Finite bounded-complete partial order with a least element named "bot".
// Type 0 is always bot. Joins are precomputed into a table.
class TypeHierarchy {
 public:
  static constexpr std::string_view kBottomName = "bot";

  // `features` gives the total feature order.
  static TypeHierarchy build(const std::vector<TypeDecl>& decls,
                             const std::vector<std::string>& features);

  TypeId bottom() const { return 0; }
  std::size_t type_count() const { return names_.size(); }
  const std::string& type_name(TypeId t) const;
  std::optional<TypeId> find_type(std::string_view name) const;

  std::size_t feature_count() const { return features_.size(); }
  const std::string& feature_name(FeatureId f) const { return features_.at(f); }
  std::optional<FeatureId> find_feature(std::string_view name) const;

  // kTop when the two types have no common upper bound.
  TypeId lub(TypeId a, TypeId b) const {
    if (a == kTop || b == kTop) return kTop;
    return lub_[a * names_.size() + b];
  }
  // a ⊑ b: b is at least as specific as a.
  bool subsumes(TypeId a, TypeId b) const { return leq_[a * names_.size() + b] != 0; }
  // Length of the longest chain from bot.
  unsigned height(TypeId t) const { return height_.at(t); }
  const std::vector<TypeId>& immediate_subtypes(TypeId t) const { return children_.at(t); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TypeId> by_name_;
  std::vector<std::vector<TypeId>> children_;
  std::vector<char> leq_;
  std::vector<TypeId> lub_;
  std::vector<unsigned> height_;
  std::vector<std::string> features_;
  std::unordered_map<std::string, FeatureId> feature_ids_;
};

}  // namespace tfsparse
