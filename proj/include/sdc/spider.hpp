#pragma once

#include <vector>

#include "sdc/graph.hpp"
#include "sdc/structure.hpp"

namespace sdc {

// The normal-form data of a connected diagram built from one sort's
// Frobenius generators: left legs, right legs, and inner loops.
struct Spider {
  SortId sort = 0;
  size_t left_legs = 0;
  size_t right_legs = 0;
  size_t loops = 0;

  bool operator==(const Spider&) const = default;
};

namespace detail {

// Connected components of the node/edge incidence structure. Returns per
// entity (nodes then edges) a component index, numbered by first occurrence.
inline std::vector<size_t> incidence_components(const OpenHypergraph& g) {
  size_t n = g.node_count(), m = g.edge_count();
  UnionFind uf(n + m);
  for (size_t e = 0; e < m; ++e) {
    const auto& ed = g.edge(static_cast<EdgeId>(e));
    for (NodeId v : ed.sources) uf.unite(n + e, v);
    for (NodeId v : ed.targets) uf.unite(n + e, v);
  }
  std::vector<size_t> comp(n + m);
  std::map<size_t, size_t> index;
  for (size_t i = 0; i < n + m; ++i) {
    size_t r = uf.find(i);
    auto it = index.find(r);
    if (it == index.end()) it = index.insert({r, index.size()}).first;
    comp[i] = it->second;
  }
  return comp;
}

} // namespace detail

// Decomposes a Frobenius-generators-only graph into one spider per connected
// component. Loop counts are the first Betti number of the component's
// incidence structure; with `special` they are reported as zero.
inline std::vector<Spider> spider_normal_form(const OpenHypergraph& g,
                                              const StructureMap& marking,
                                              bool special = false) {
  for (const auto& e : g.edges())
    if (!marking.is_frobenius_role(e.op))
      fail(ErrorKind::MixedGenerators,
           "graph contains a non-Frobenius generator");
  size_t n = g.node_count(), m = g.edge_count();
  std::vector<size_t> comp = detail::incidence_components(g);
  size_t count = 0;
  for (size_t c : comp) count = std::max(count, c + 1);

  std::vector<Spider> spiders(count);
  std::vector<size_t> entities(count, 0), incidences(count, 0);
  std::vector<bool> seen(count, false);
  for (size_t v = 0; v < n; ++v) {
    spiders[comp[v]].sort = g.node(static_cast<NodeId>(v)).sort;
    entities[comp[v]]++;
    seen[comp[v]] = true;
  }
  for (size_t e = 0; e < m; ++e) {
    const auto& ed = g.edge(static_cast<EdgeId>(e));
    entities[comp[n + e]]++;
    incidences[comp[n + e]] += ed.sources.size() + ed.targets.size();
  }
  for (NodeId v : g.left()) spiders[comp[v]].left_legs++;
  for (NodeId v : g.right()) spiders[comp[v]].right_legs++;
  for (size_t c = 0; c < count; ++c) {
    if (!special && incidences[c] + 1 >= entities[c])
      spiders[c].loops = incidences[c] + 1 - entities[c];
  }
  (void)seen;
  return spiders;
}

} // namespace sdc
