#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdc/graph.hpp"

namespace sdc {

// Options for canonical labeling. Ops listed in comm_sources compare their
// source lists as multisets rather than ordered lists (dually comm_targets),
// which lets equality checks work modulo a designated (co)commutativity.
struct CanonOptions {
  std::set<OpId> comm_sources;
  std::set<OpId> comm_targets;
};

namespace detail {

using Sig = std::vector<long long>;

struct CanonWork {
  const OpenHypergraph* g;
  const CanonOptions* opt;
  // incidences[v] = list of (edge, role 0=src/1=tgt, index or -1 when unordered)
  std::vector<std::vector<std::array<long long, 3>>> incidences;

  explicit CanonWork(const OpenHypergraph& graph, const CanonOptions& options)
      : g(&graph), opt(&options) {
    incidences.resize(g->node_count());
    for (size_t e = 0; e < g->edge_count(); ++e) {
      const auto& ed = g->edge(static_cast<EdgeId>(e));
      bool cs = opt->comm_sources.count(ed.op) > 0;
      bool ct = opt->comm_targets.count(ed.op) > 0;
      for (size_t i = 0; i < ed.sources.size(); ++i)
        incidences[ed.sources[i]].push_back(
            {static_cast<long long>(e), 0, cs ? -1 : static_cast<long long>(i)});
      for (size_t i = 0; i < ed.targets.size(); ++i)
        incidences[ed.targets[i]].push_back(
            {static_cast<long long>(e), 1, ct ? -1 : static_cast<long long>(i)});
    }
  }

  std::vector<long long> initial_colors() const {
    size_t n = g->node_count();
    std::vector<Sig> sigs(n);
    for (size_t v = 0; v < n; ++v) sigs[v].push_back(g->node(static_cast<NodeId>(v)).sort);
    for (size_t i = 0; i < g->left().size(); ++i)
      sigs[g->left()[i]].push_back(1000000 + static_cast<long long>(i));
    for (size_t i = 0; i < g->right().size(); ++i)
      sigs[g->right()[i]].push_back(2000000 + static_cast<long long>(i));
    return rank(sigs);
  }

  static std::vector<long long> rank(std::vector<Sig>& sigs) {
    std::map<Sig, long long> order;
    for (auto& s : sigs) order[s] = 0;
    long long next = 0;
    for (auto& [k, v] : order) v = next++;
    std::vector<long long> colors(sigs.size());
    for (size_t i = 0; i < sigs.size(); ++i) colors[i] = order[sigs[i]];
    return colors;
  }

  Sig edge_signature(size_t e, const std::vector<long long>& colors) const {
    const auto& ed = g->edge(static_cast<EdgeId>(e));
    Sig s;
    s.push_back(ed.op);
    std::vector<long long> src, tgt;
    for (NodeId n : ed.sources) src.push_back(colors[n]);
    for (NodeId n : ed.targets) tgt.push_back(colors[n]);
    if (opt->comm_sources.count(ed.op)) std::sort(src.begin(), src.end());
    if (opt->comm_targets.count(ed.op)) std::sort(tgt.begin(), tgt.end());
    s.push_back(static_cast<long long>(src.size()));
    s.insert(s.end(), src.begin(), src.end());
    s.insert(s.end(), tgt.begin(), tgt.end());
    return s;
  }

  // Iterated refinement: recolor nodes by (color, multiset of incident edge
  // signatures) until the partition stabilizes.
  std::vector<long long> refine(std::vector<long long> colors) const {
    size_t n = g->node_count();
    if (n == 0) return colors;
    size_t classes = count_classes(colors);
    while (true) {
      std::vector<Sig> esigs(g->edge_count());
      for (size_t e = 0; e < g->edge_count(); ++e) esigs[e] = edge_signature(e, colors);
      std::vector<Sig> nsigs(n);
      for (size_t v = 0; v < n; ++v) {
        Sig s;
        s.push_back(colors[v]);
        std::vector<Sig> inc;
        for (const auto& [e, role, idx] : incidences[v]) {
          Sig one = {role, idx};
          const Sig& es = esigs[static_cast<size_t>(e)];
          one.insert(one.end(), es.begin(), es.end());
          inc.push_back(std::move(one));
        }
        std::sort(inc.begin(), inc.end());
        for (auto& one : inc) {
          s.push_back(-7); // separator
          s.insert(s.end(), one.begin(), one.end());
        }
        nsigs[v] = std::move(s);
      }
      std::vector<long long> next = rank(nsigs);
      size_t next_classes = count_classes(next);
      if (next_classes == classes) return next;
      classes = next_classes;
      colors = std::move(next);
    }
  }

  static size_t count_classes(const std::vector<long long>& colors) {
    std::set<long long> s(colors.begin(), colors.end());
    return s.size();
  }

  // Canonical byte encoding under a complete (discrete) coloring.
  std::string encode(const std::vector<long long>& colors) const {
    size_t n = g->node_count();
    std::vector<long long> label(n);
    for (size_t v = 0; v < n; ++v) label[v] = colors[v];
    std::string out;
    out += "n" + std::to_string(n) + ";";
    {
      std::vector<std::pair<long long, SortId>> order;
      for (size_t v = 0; v < n; ++v)
        order.push_back({label[v], g->node(static_cast<NodeId>(v)).sort});
      std::sort(order.begin(), order.end());
      for (auto& [l, sort] : order) out += std::to_string(sort) + ",";
    }
    out += ";e";
    std::vector<Sig> edges;
    for (size_t e = 0; e < g->edge_count(); ++e) {
      const auto& ed = g->edge(static_cast<EdgeId>(e));
      Sig s;
      s.push_back(ed.op);
      std::vector<long long> src, tgt;
      for (NodeId v : ed.sources) src.push_back(label[v]);
      for (NodeId v : ed.targets) tgt.push_back(label[v]);
      if (opt->comm_sources.count(ed.op)) std::sort(src.begin(), src.end());
      if (opt->comm_targets.count(ed.op)) std::sort(tgt.begin(), tgt.end());
      s.push_back(-1);
      s.insert(s.end(), src.begin(), src.end());
      s.push_back(-2);
      s.insert(s.end(), tgt.begin(), tgt.end());
      edges.push_back(std::move(s));
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& s : edges) {
      out += "[";
      for (long long v : s) out += std::to_string(v) + " ";
      out += "]";
    }
    out += ";L";
    for (NodeId v : g->left()) out += std::to_string(label[v]) + ",";
    out += ";R";
    for (NodeId v : g->right()) out += std::to_string(label[v]) + ",";
    return out;
  }

  std::string search(std::vector<long long> colors) const {
    colors = refine(std::move(colors));
    size_t n = g->node_count();
    // Find the first non-singleton class (by color value).
    std::map<long long, std::vector<size_t>> classes;
    for (size_t v = 0; v < n; ++v) classes[colors[v]].push_back(v);
    const std::vector<size_t>* cell = nullptr;
    for (auto& [c, members] : classes) {
      if (members.size() > 1) {
        cell = &members;
        break;
      }
    }
    if (!cell) return encode(colors);
    std::string best;
    for (size_t v : *cell) {
      std::vector<Sig> sigs(n);
      for (size_t u = 0; u < n; ++u) sigs[u] = {colors[u], u == v ? 0LL : 1LL};
      std::vector<long long> branched = rank(sigs);
      std::string s = search(std::move(branched));
      if (best.empty() || s < best) best = std::move(s);
    }
    return best;
  }
};

} // namespace detail

// Canonical form: equal strings exactly when the graphs are isomorphic as
// interfaced, labeled hypergraphs (ordered endpoints, positional interfaces).
inline std::string canonical_encoding(const OpenHypergraph& g,
                                      const CanonOptions& opt = {}) {
  detail::CanonWork work(g, opt);
  return work.search(work.initial_colors());
}

inline bool iso_check(const OpenHypergraph& g, const OpenHypergraph& h,
                      const CanonOptions& opt = {}) {
  if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count())
    return false;
  if (g.left().size() != h.left().size() || g.right().size() != h.right().size())
    return false;
  if (g.left_word() != h.left_word() || g.right_word() != h.right_word())
    return false;
  return canonical_encoding(g, opt) == canonical_encoding(h, opt);
}

} // namespace sdc
