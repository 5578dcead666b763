#include "tfsparse/signature.hpp"

#include <algorithm>
#include <set>

namespace tfsparse {

const std::string& TypeHierarchy::type_name(TypeId t) const {
  static const std::string top = "top";
  if (t == kTop) return top;
  return names_.at(t);
}

std::optional<TypeId> TypeHierarchy::find_type(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<FeatureId> TypeHierarchy::find_feature(std::string_view name) const {
  auto it = feature_ids_.find(std::string(name));
  if (it == feature_ids_.end()) return std::nullopt;
  return it->second;
}

TypeHierarchy TypeHierarchy::build(const std::vector<TypeDecl>& decls,
                                   const std::vector<std::string>& features) {
  TypeHierarchy h;
  auto intern = [&h](const std::string& name) {
    auto [it, fresh] = h.by_name_.try_emplace(name, static_cast<TypeId>(h.names_.size()));
    if (fresh) {
      h.names_.push_back(name);
      h.children_.emplace_back();
    }
    return it->second;
  };
  intern(std::string(kBottomName));

  std::set<std::string> headed;
  for (const auto& d : decls) {
    if (!headed.insert(d.name).second)
      throw SignatureError(SignatureErrorKind::DuplicateType, {d.name},
                           "type '" + d.name + "' is declared twice");
    TypeId p = intern(d.name);
    std::set<std::string> seen;
    for (const auto& s : d.subtypes) {
      if (!seen.insert(s).second)
        throw SignatureError(SignatureErrorKind::DuplicateType, {s},
                             "type '" + s + "' is listed twice under '" + d.name + "'");
      TypeId c = intern(s);
      h.children_[p].push_back(c);
    }
  }
  const std::size_t n = h.names_.size();

  // Types that nothing declares as a subtype hang directly below bot.
  std::vector<int> indegree(n, 0);
  for (TypeId p = 0; p < n; ++p)
    for (TypeId c : h.children_[p]) ++indegree[c];
  for (TypeId t = 1; t < n; ++t)
    if (indegree[t] == 0) {
      h.children_[0].push_back(t);
      ++indegree[t];
    }

  // Kahn's algorithm; whatever is left over sits on a cycle.
  std::vector<TypeId> order;
  std::vector<int> remaining = indegree;
  std::vector<TypeId> ready;
  if (remaining[0] == 0) ready.push_back(0);
  while (!ready.empty()) {
    TypeId t = ready.back();
    ready.pop_back();
    order.push_back(t);
    for (TypeId c : h.children_[t])
      if (--remaining[c] == 0) ready.push_back(c);
  }
  if (order.size() != n) {
    std::vector<std::string> cyc;
    for (TypeId t = 0; t < n; ++t)
      if (remaining[t] > 0) cyc.push_back(h.names_[t]);
    std::string msg = "subtype cycle among:";
    for (const auto& c : cyc) msg += " " + c;
    throw SignatureError(SignatureErrorKind::Cycle, cyc, msg);
  }

  h.leq_.assign(n * n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TypeId t = *it;
    h.leq_[t * n + t] = 1;
    for (TypeId c : h.children_[t])
      for (TypeId u = 0; u < n; ++u)
        if (h.leq_[c * n + u]) h.leq_[t * n + u] = 1;
  }

  h.height_.assign(n, 0);
  for (TypeId t : order)
    for (TypeId c : h.children_[t]) h.height_[c] = std::max(h.height_[c], h.height_[t] + 1);

  h.lub_.assign(n * n, kTop);
  for (TypeId a = 0; a < n; ++a) {
    for (TypeId b = a; b < n; ++b) {
      std::vector<TypeId> upper;
      for (TypeId u = 0; u < n; ++u)
        if (h.leq_[a * n + u] && h.leq_[b * n + u]) upper.push_back(u);
      TypeId j = kTop;
      for (TypeId u : upper)
        if (std::all_of(upper.begin(), upper.end(), [&](TypeId v) { return h.leq_[u * n + v] != 0; })) {
          j = u;
          break;
        }
      if (j == kTop && !upper.empty()) {
        std::string msg = "types '" + h.names_[a] + "' and '" + h.names_[b] +
                          "' have several minimal upper bounds:";
        for (TypeId u : upper)
          if (std::none_of(upper.begin(), upper.end(),
                           [&](TypeId v) { return v != u && h.leq_[v * n + u]; }))
            msg += " " + h.names_[u];
        throw SignatureError(SignatureErrorKind::NotBoundedComplete, {h.names_[a], h.names_[b]}, msg);
      }
      h.lub_[a * n + b] = j;
      h.lub_[b * n + a] = j;
    }
  }

  h.features_ = features;
  for (FeatureId f = 0; f < h.features_.size(); ++f) h.feature_ids_[h.features_[f]] = f;
  return h;
}

}  // namespace tfsparse
