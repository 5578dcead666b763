#include "tfsparse/render.hpp"

#include <vector>

namespace tfsparse {

namespace {

// Shared bookkeeping: which classes are referenced more than once, and the
// tag each gets when first printed.
class Tagger {
 public:
  explicit Tagger(const FeatureGraph& g) : refs_(g.size(), 0), tag_(g.size(), 0) {
    for (ClassId r : g.roots()) ++refs_[r];
    for (const auto& n : g.nodes())
      for (const Arc& a : n.arcs) ++refs_[a.target];
  }

  bool shared(ClassId c) const { return refs_[c] > 1; }
  int tag(ClassId c) const { return tag_[c]; }
  int assign(ClassId c) { return tag_[c] = ++next_; }

 private:
  std::vector<int> refs_;
  std::vector<int> tag_;
  int next_ = 0;
};

std::string text_term(const FeatureGraph& g, const TypeHierarchy& h, Tagger& tags, ClassId c,
                      bool top) {
  if (tags.shared(c) && tags.tag(c)) return "#" + std::to_string(tags.tag(c));
  int tag = tags.shared(c) ? tags.assign(c) : 0;
  std::string body = h.type_name(g.type(c));
  for (const Arc& a : g.nodes()[c].arcs)
    body += " & " + h.feature_name(a.feature) + ":" + text_term(g, h, tags, a.target, false);
  if (tag) return "#" + std::to_string(tag) + "(" + body + ")";
  if (top || g.nodes()[c].arcs.empty()) return body;
  return "(" + body + ")";
}

Json json_term(const FeatureGraph& g, const TypeHierarchy& h, Tagger& tags, ClassId c) {
  if (tags.shared(c) && tags.tag(c)) return Json{{"ref", tags.tag(c)}};
  Json out;
  out["type"] = h.type_name(g.type(c));
  if (tags.shared(c)) out["tag"] = tags.assign(c);
  Json features = Json::array();
  for (const Arc& a : g.nodes()[c].arcs)
    features.push_back(Json::array({h.feature_name(a.feature), json_term(g, h, tags, a.target)}));
  out["features"] = std::move(features);
  return out;
}

}  // namespace

std::string render_avm(const Afs& a, const TypeHierarchy& h) {
  Tagger tags(a.graph());
  return text_term(a.graph(), h, tags, a.root(), true);
}

std::string render_amrs(const Amrs& a, const TypeHierarchy& h) {
  Tagger tags(a.graph());
  std::string out;
  for (ClassId r : a.graph().roots()) {
    if (!out.empty()) out += ", ";
    out += text_term(a.graph(), h, tags, r, true);
  }
  return out;
}

Json avm_json(const Afs& a, const TypeHierarchy& h) {
  Tagger tags(a.graph());
  return json_term(a.graph(), h, tags, a.root());
}

Json amrs_json(const Amrs& a, const TypeHierarchy& h) {
  Tagger tags(a.graph());
  Json out = Json::array();
  for (ClassId r : a.graph().roots()) out.push_back(json_term(a.graph(), h, tags, r));
  return out;
}

}  // namespace tfsparse
