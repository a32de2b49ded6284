#pragma once

// Rule-invariant keys of diagrams, used two ways: as decisive canonical forms
// for theories whose free model they present exactly, and as sound
// distinguishers (countermodels) elsewhere. Each returns nullopt outside its
// fragment.

#include <optional>
#include <sstream>

#include "sdc/spider.hpp"

namespace sdc {

namespace detail {

inline bool only_roles(const OpenHypergraph& g, const StructureMap& m,
                       std::initializer_list<StructRole> allowed) {
  for (const auto& e : g.edges()) {
    auto r = m.role_of(e.op);
    if (!r) return false;
    bool ok = false;
    for (StructRole a : allowed) ok = ok || r->second == a;
    if (!ok) return false;
  }
  return true;
}

// Kahn-style edge order; nullopt when a cycle blocks evaluation.
inline std::optional<std::vector<EdgeId>> topo_edges(const OpenHypergraph& g) {
  std::vector<size_t> missing(g.edge_count(), 0);
  std::map<NodeId, std::vector<EdgeId>> waiting;
  std::vector<bool> produced(g.node_count(), false);
  DegreeReport deg = degrees(g);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (deg.per_node[v].in == 0) produced[v] = true;
  std::vector<EdgeId> order, ready;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    for (NodeId v : ed.sources)
      if (!produced[v]) {
        missing[e]++;
        waiting[v].push_back(e);
      }
    if (missing[e] == 0) ready.push_back(e);
  }
  while (!ready.empty()) {
    EdgeId e = ready.back();
    ready.pop_back();
    order.push_back(e);
    for (NodeId v : g.edge(e).targets) {
      if (produced[v]) continue;
      produced[v] = true;
      for (EdgeId w : waiting[v])
        if (--missing[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != g.edge_count()) return std::nullopt;
  return order;
}

inline OpenHypergraph mirror_graph(const OpenHypergraph& g, const StructureMap& m,
                                   StructureMap& mirrored_marking) {
  OpenHypergraph out(g.sig());
  for (const auto& n : g.nodes()) out.add_node(n.sort);
  for (const auto& e : g.edges()) out.add_edge(e.op, e.targets, e.sources);
  out.set_left(g.right());
  out.set_right(g.left());
  for (auto& [op, sr] : m.role_of_) {
    StructRole flipped;
    switch (sr.second) {
      case StructRole::Comult: flipped = StructRole::Mult; break;
      case StructRole::Counit: flipped = StructRole::Unit; break;
      case StructRole::Mult: flipped = StructRole::Comult; break;
      case StructRole::Unit: flipped = StructRole::Counit; break;
      case StructRole::Cup: flipped = StructRole::Cap; break;
      case StructRole::Cap: flipped = StructRole::Cup; break;
    }
    mirrored_marking.mark(sr.first, flipped, op);
  }
  return out;
}

} // namespace detail

// Free-monoid evaluation of a {mult, unit}-only monogamous acyclic diagram:
// each right port receives the word of left-port letters feeding it, sorted
// into a multiset when the monoid is commutative. Complete for the free
// (commutative) monoid on the fragment; silently mirrors for comonoids.
inline std::optional<std::string> monoid_word_key(const OpenHypergraph& g,
                                                  const StructureMap& m,
                                                  bool commutative, bool mirrored) {
  if (mirrored) {
    StructureMap flipped;
    OpenHypergraph rev = detail::mirror_graph(g, m, flipped);
    return monoid_word_key(rev, flipped, commutative, false);
  }
  if (!detail::only_roles(g, m, {StructRole::Mult, StructRole::Unit})) return std::nullopt;
  if (!is_monogamous(g).ok) return std::nullopt;
  auto order = detail::topo_edges(g);
  if (!order) return std::nullopt;
  std::vector<std::vector<size_t>> value(g.node_count());
  for (size_t i = 0; i < g.left().size(); ++i) value[g.left()[i]] = {i};
  for (EdgeId e : *order) {
    const auto& ed = g.edge(e);
    auto role = m.role_of(ed.op)->second;
    if (role == StructRole::Unit) {
      value[ed.targets[0]] = {};
    } else {
      std::vector<size_t> v = value[ed.sources[0]];
      const auto& w = value[ed.sources[1]];
      v.insert(v.end(), w.begin(), w.end());
      if (commutative) std::sort(v.begin(), v.end());
      value[ed.targets[0]] = std::move(v);
    }
  }
  std::ostringstream os;
  for (NodeId r : g.right()) {
    os << "[";
    auto v = value[r];
    if (commutative) std::sort(v.begin(), v.end());
    for (size_t i : v) os << i << " ";
    os << "]";
  }
  return os.str();
}

// Path-count matrix of a bimonoid-generators-only monogamous acyclic
// diagram: entry (j, i) counts directed paths from left port i to right port
// j. Presents the free bicommutative bimonoid (natural-number matrices)
// exactly; a sound invariant for plain bimonoids too.
inline std::optional<std::string> path_matrix_key(const OpenHypergraph& g,
                                                  const StructureMap& m) {
  if (!detail::only_roles(g, m,
                          {StructRole::Mult, StructRole::Unit, StructRole::Comult,
                           StructRole::Counit}))
    return std::nullopt;
  if (!is_monogamous(g).ok) return std::nullopt;
  auto order = detail::topo_edges(g);
  if (!order) return std::nullopt;
  size_t nl = g.left().size();
  std::vector<std::vector<long long>> value(g.node_count(),
                                            std::vector<long long>(nl, 0));
  for (size_t i = 0; i < nl; ++i) value[g.left()[i]][i] += 1;
  for (EdgeId e : *order) {
    const auto& ed = g.edge(e);
    switch (m.role_of(ed.op)->second) {
      case StructRole::Mult:
        for (size_t i = 0; i < nl; ++i)
          value[ed.targets[0]][i] = value[ed.sources[0]][i] + value[ed.sources[1]][i];
        break;
      case StructRole::Unit:
        break; // zero vector
      case StructRole::Comult:
        value[ed.targets[0]] = value[ed.sources[0]];
        value[ed.targets[1]] = value[ed.sources[0]];
        break;
      case StructRole::Counit:
        break;
      default:
        return std::nullopt;
    }
  }
  std::ostringstream os;
  os << g.right().size() << "x" << nl << ":";
  for (NodeId r : g.right())
    for (size_t i = 0; i < nl; ++i) os << value[r][i] << ",";
  return os.str();
}

// Spider decomposition key: which boundary ports each connected component
// touches, plus its loop count when the special law is absent, plus the
// multiset of closed components unless the bone law removes them. Sound for
// the corresponding Frobenius flavors; complete for connected planar
// composites by the spider theorem.
inline std::optional<std::string> spider_partition_key(const OpenHypergraph& g,
                                                       const StructureMap& m,
                                                       bool count_loops,
                                                       bool drop_closed) {
  if (!detail::only_roles(g, m,
                          {StructRole::Mult, StructRole::Unit, StructRole::Comult,
                           StructRole::Counit}))
    return std::nullopt;
  if (!is_monogamous(g).ok) return std::nullopt;
  std::vector<size_t> comp = detail::incidence_components(g);
  std::vector<Spider> spiders = spider_normal_form(g, m, !count_loops);
  size_t count = spiders.size();
  std::vector<std::vector<size_t>> lports(count), rports(count);
  for (size_t i = 0; i < g.left().size(); ++i) lports[comp[g.left()[i]]].push_back(i);
  for (size_t j = 0; j < g.right().size(); ++j) rports[comp[g.right()[j]]].push_back(j);
  std::vector<std::string> open_parts;
  std::vector<std::string> closed_parts;
  for (size_t c = 0; c < count; ++c) {
    std::ostringstream os;
    os << "(L";
    for (size_t i : lports[c]) os << " " << i;
    os << " R";
    for (size_t j : rports[c]) os << " " << j;
    if (count_loops) os << " k" << spiders[c].loops;
    os << " s" << spiders[c].sort << ")";
    if (lports[c].empty() && rports[c].empty()) {
      if (!drop_closed) closed_parts.push_back(os.str());
    } else {
      open_parts.push_back(os.str());
    }
  }
  std::sort(open_parts.begin(), open_parts.end());
  std::sort(closed_parts.begin(), closed_parts.end());
  std::string out;
  for (auto& p : open_parts) out += p;
  out += "|";
  for (auto& p : closed_parts) out += p;
  return out;
}

} // namespace sdc
