#include "tfsparse/afs.hpp"

#include <algorithm>
#include <map>

namespace tfsparse {

Afs::Afs(FeatureGraph g) : g_(std::move(g)) {
  if (g_.length() != 1) throw std::invalid_argument("an AFS has exactly one root");
}

Afs Afs::atomic(TypeId type) {
  std::vector<GraphNode> nodes{{type, {}}};
  ClassId root = 0;
  return Afs(FeatureGraph::canonical(nodes, std::span<const ClassId>(&root, 1)));
}

std::optional<TypeId> Afs::type_at(const Path& p) const {
  auto c = class_at(p);
  if (!c) return std::nullopt;
  return g_.type(*c);
}

bool Afs::equivalent(const Path& p, const Path& q) const {
  auto a = class_at(p), b = class_at(q);
  return a && b && *a == *b;
}

namespace {

FeatureGraph graph_of(const ConcreteGraph& g, const std::vector<NodeId>& roots) {
  std::map<NodeId, ClassId> index;
  for (const auto& [id, node] : g.nodes()) index.emplace(id, static_cast<ClassId>(index.size()));
  std::vector<GraphNode> nodes;
  nodes.reserve(index.size());
  for (const auto& [id, node] : g.nodes()) {
    GraphNode n{node.type, {}};
    for (const auto& [f, t] : node.arcs) n.arcs.push_back({f, index.at(t)});
    nodes.push_back(std::move(n));
  }
  std::vector<ClassId> r;
  for (NodeId id : roots) r.push_back(index.at(id));
  return FeatureGraph::canonical(nodes, r);
}

}  // namespace

Afs abs(const ConcreteTfs& a) { return Afs(graph_of(a.graph(), {a.root()})); }

ConcreteTfs conc(const Afs& a) {
  ConcreteGraph g;
  std::vector<NodeId> ids;
  for (const auto& n : a.graph().nodes()) ids.push_back(g.add_node(n.type));
  for (ClassId c = 0; c < a.graph().size(); ++c)
    for (const Arc& arc : a.graph().nodes()[c].arcs) g.add_arc(ids[c], arc.feature, ids[arc.target]);
  return ConcreteTfs(std::move(g), ids[a.root()]);
}

// ---------------------------------------------------------------------------
// Literal normalisation. Deliberately shares nothing with the merge engine.

namespace {

struct Closure {
  std::vector<Path> paths;
  std::map<Path, std::size_t> index;
  std::vector<std::vector<char>> rel;  // the path equivalence, as a matrix

  std::size_t add(const Path& p) {
    auto [it, fresh] = index.emplace(p, paths.size());
    if (fresh) {
      paths.push_back(p);
      for (auto& row : rel) row.push_back(0);
      rel.emplace_back(paths.size(), 0);
      rel.back().back() = 1;
    }
    return it->second;
  }
};

bool is_prefix(const Path& pre, const Path& p) {
  return pre.size() <= p.size() && std::equal(pre.begin(), pre.end(), p.begin());
}

}  // namespace

Unified<Afs> normalize(const PreAfs& pre, const TypeHierarchy& h) {
  if (!pre.paths.count(Path{})) throw std::invalid_argument("path set lacks the empty path");
  for (const Path& p : pre.paths)
    if (!p.empty() && !pre.paths.count(Path(p.begin(), p.end() - 1)))
      throw std::invalid_argument("path set is not prefix-closed");
  for (const auto& [p, t] : pre.typing)
    if (!pre.paths.count(p)) throw std::invalid_argument("typing mentions an unknown path");
  for (const auto& [p, q] : pre.equivalences)
    if (!pre.paths.count(p) || !pre.paths.count(q))
      throw std::invalid_argument("equivalence mentions an unknown path");

  Closure cl;
  for (const Path& p : pre.paths) cl.add(p);
  for (const auto& [p, q] : pre.equivalences) {
    cl.rel[cl.index[p]][cl.index[q]] = 1;
    cl.rel[cl.index[q]][cl.index[p]] = 1;
  }

  // Every path of the closure is equivalent to one of the original paths, so
  // an acyclic result has at most |paths| classes and no path that long.
  const std::size_t cap = pre.paths.size();

  for (bool changed = true; changed;) {
    changed = false;
    // Equivalence closure (Warshall; symmetry is preserved by construction).
    const std::size_t n = cl.paths.size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (cl.rel[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (cl.rel[k][j] && !cl.rel[i][j]) cl.rel[i][j] = cl.rel[j][i] = 1;

    // Right congruence: p ~ q and p.a a path  =>  q.a a path and p.a ~ q.a.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !cl.rel[i][j]) continue;
        const Path p = cl.paths[i], q = cl.paths[j];
        for (std::size_t k = 0; k < n; ++k) {
          const Path pa = cl.paths[k];
          if (pa.size() == p.size() || !is_prefix(p, pa)) continue;
          Path qa = q;
          qa.insert(qa.end(), pa.begin() + static_cast<long>(p.size()), pa.end());
          if (qa.size() >= cap)
            throw CyclicClosure("path closure is infinite (cyclic structure)");
          bool fresh = !cl.index.count(qa);
          std::size_t b = cl.add(qa);
          std::size_t a = cl.index.at(pa);
          if (fresh || !cl.rel[a][b]) {
            cl.rel[a][b] = cl.rel[b][a] = 1;
            changed = true;
          }
        }
      }
    }
  }

  // Classes, then the join of every type constraint in a class.
  const std::size_t n = cl.paths.size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (cl.rel[i][j]) cls[j] = reps.size();
    reps.push_back(i);
  }
  std::vector<TypeId> type(reps.size(), h.bottom());
  std::vector<Path> shortest(reps.size());
  std::vector<char> have_shortest(reps.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = cls[i];
    const Path& p = cl.paths[i];
    if (!have_shortest[c] || p.size() < shortest[c].size() ||
        (p.size() == shortest[c].size() && p < shortest[c])) {
      shortest[c] = p;
      have_shortest[c] = 1;
    }
  }
  for (const auto& [p, t] : pre.typing) {
    std::size_t c = cls[cl.index.at(p)];
    TypeId j = h.lub(type[c], t);
    if (j == kTop) return UnificationFailure{type[c], t, 0, shortest[c]};
    type[c] = j;
  }

  std::vector<GraphNode> nodes(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) nodes[c].type = type[c];
  for (std::size_t i = 0; i < n; ++i) {
    const Path& p = cl.paths[i];
    if (p.empty()) continue;
    Path parent(p.begin(), p.end() - 1);
    std::size_t from = cls[cl.index.at(parent)];
    Arc arc{p.back(), static_cast<ClassId>(cls[i])};
    auto& arcs = nodes[from].arcs;
    if (std::find(arcs.begin(), arcs.end(), arc) == arcs.end()) arcs.push_back(arc);
  }
  ClassId root = static_cast<ClassId>(cls[cl.index.at(Path{})]);
  return Afs(FeatureGraph::canonical(nodes, std::span<const ClassId>(&root, 1)));
}

PreAfs to_pre_afs(const Afs& a) {
  if (a.is_cyclic()) throw CyclicStructure("a cyclic structure has infinitely many paths");
  const FeatureGraph& g = a.graph();
  PreAfs out;
  std::vector<std::optional<Path>> rep(g.size());
  std::vector<std::pair<ClassId, Path>> stack{{a.root(), {}}};
  while (!stack.empty()) {
    auto [c, p] = std::move(stack.back());
    stack.pop_back();
    out.paths.insert(p);
    out.typing.insert({p, g.type(c)});
    if (!rep[c])
      rep[c] = p;
    else
      out.equivalences.insert({*rep[c], p});
    for (const Arc& arc : g.nodes()[c].arcs) {
      Path q = p;
      q.push_back(arc.feature);
      stack.push_back({arc.target, std::move(q)});
    }
  }
  return out;
}

PreAfs merge(const PreAfs& a, const PreAfs& b) {
  PreAfs out = a;
  out.paths.insert(b.paths.begin(), b.paths.end());
  out.typing.insert(b.typing.begin(), b.typing.end());
  out.equivalences.insert(b.equivalences.begin(), b.equivalences.end());
  return out;
}

Unified<Afs> afs_unify(const Afs& a, const Afs& b, const TypeHierarchy& h) {
  MergeEngine e(h);
  ClassId ra = e.append(a.graph()) + a.root();
  ClassId rb = e.append(b.graph()) + b.root();
  ClassId roots[] = {ra};
  if (!e.unify(ra, rb)) return e.failure(roots);
  return Afs(e.extract(roots));
}

bool afs_order(const Afs& a, const Afs& b, const TypeHierarchy& h) {
  return graph_subsumes(a.graph(), b.graph(), h);
}

}  // namespace tfsparse
