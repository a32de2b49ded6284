#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdc/canon.hpp"
#include "sdc/graph.hpp"
#include "sdc/structure.hpp"

namespace sdc {

// An interface-preserving rule: both sides share boundary words. Oriented
// rules participate in normalize (lhs reduces to rhs); unoriented rules are
// equations used only by search and replay.
struct RewriteRule {
  std::string name;
  OpenHypergraph lhs;
  OpenHypergraph rhs;
  bool oriented = true;
};

inline RewriteRule make_rule(std::string name, OpenHypergraph lhs, OpenHypergraph rhs,
                             bool oriented) {
  if (lhs.left_word() != rhs.left_word() || lhs.right_word() != rhs.right_word())
    fail(ErrorKind::BoundaryMismatch, "rule '" + name + "' sides have different boundaries");
  return RewriteRule{std::move(name), std::move(lhs), std::move(rhs), oriented};
}

enum class TheoryMode { Monogamous, Frobenius };

// A registered model key: a value preserved by the theory's rules. Keys that
// differ prove two diagrams inequivalent; when the key presents the theory's
// free model exactly (complete), equal keys also prove equality. nullopt
// means the graph is outside the key's fragment.
struct Countermodel {
  std::string name;
  std::function<std::optional<std::string>(const OpenHypergraph&)> key;
  bool complete = false;
};

struct Theory {
  std::string name;
  SigPtr sig;            // base signature extended with the theory's generators
  StructureMap marking;  // structural roles of the added generators
  std::vector<RewriteRule> rules;
  TheoryMode mode = TheoryMode::Monogamous;
  std::vector<Countermodel> countermodels;

  const RewriteRule* find_rule(const std::string& rule_name) const {
    for (const auto& r : rules)
      if (r.name == rule_name) return &r;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Matching

struct MatchSite {
  std::vector<NodeId> node_image; // pattern node -> host node
  std::vector<EdgeId> edge_image; // pattern edge -> host edge
  bool reversed = false;
  uint64_t host_fingerprint = 0;
};

inline uint64_t graph_fingerprint(const OpenHypergraph& g) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  };
  mix(g.node_count());
  for (const auto& n : g.nodes()) mix(n.sort);
  for (const auto& e : g.edges()) {
    mix(0xe0ull + e.op);
    for (NodeId n : e.sources) mix(n + 1);
    mix(0xffff);
    for (NodeId n : e.targets) mix(n + 1);
  }
  mix(0xaaaa);
  for (NodeId n : g.left()) mix(n);
  mix(0xbbbb);
  for (NodeId n : g.right()) mix(n);
  return h;
}

namespace detail {

struct Matcher {
  const OpenHypergraph& pat;
  const OpenHypergraph& host;
  bool check_convexity;
  DegreeReport pat_deg;
  DegreeReport host_deg;
  std::vector<bool> pat_boundary;        // node in either pattern interface
  std::vector<bool> pat_wire_through;    // node in both interfaces
  std::vector<bool> host_interfaced;
  std::vector<std::vector<EdgeId>> host_by_op;

  std::vector<int> node_map;       // pattern node -> host node or -1
  std::vector<bool> host_node_used;
  std::vector<int> edge_map;
  std::vector<bool> host_edge_used;
  std::vector<MatchSite> out;

  Matcher(const OpenHypergraph& p, const OpenHypergraph& h, bool convex, size_t op_count)
      : pat(p), host(h), check_convexity(convex) {
    pat_deg = degrees(pat);
    host_deg = degrees(host);
    pat_boundary.assign(pat.node_count(), false);
    pat_wire_through.assign(pat.node_count(), false);
    {
      std::vector<bool> inl(pat.node_count(), false), inr(pat.node_count(), false);
      for (NodeId n : pat.left()) inl[n] = true;
      for (NodeId n : pat.right()) inr[n] = true;
      for (NodeId n = 0; n < pat.node_count(); ++n) {
        pat_boundary[n] = inl[n] || inr[n];
        pat_wire_through[n] = inl[n] && inr[n];
      }
    }
    host_interfaced.assign(host.node_count(), false);
    for (NodeId n : host.left()) host_interfaced[n] = true;
    for (NodeId n : host.right()) host_interfaced[n] = true;
    host_by_op.assign(op_count, {});
    for (EdgeId e = 0; e < host.edge_count(); ++e) host_by_op[host.edge(e).op].push_back(e);
    node_map.assign(pat.node_count(), -1);
    host_node_used.assign(host.node_count(), false);
    edge_map.assign(pat.edge_count(), -1);
    host_edge_used.assign(host.edge_count(), false);
  }

  bool bind_node(NodeId pn, NodeId hn) {
    if (node_map[pn] >= 0) return node_map[pn] == static_cast<int>(hn);
    if (host_node_used[hn]) return false;
    if (pat.node(pn).sort != host.node(hn).sort) return false;
    node_map[pn] = static_cast<int>(hn);
    host_node_used[hn] = true;
    return true;
  }

  void unbind_nodes(const std::vector<NodeId>& bound) {
    for (NodeId pn : bound) {
      host_node_used[node_map[pn]] = false;
      node_map[pn] = -1;
    }
  }

  // Internal pattern nodes must map to non-interfaced host nodes whose entire
  // incidence is covered by the match; boundary pattern nodes may land
  // anywhere of the right sort.
  bool node_constraints_ok() {
    for (NodeId pn = 0; pn < pat.node_count(); ++pn) {
      NodeId hn = static_cast<NodeId>(node_map[pn]);
      if (!pat_boundary[pn]) {
        if (host_interfaced[hn]) return false;
        if (host_deg.per_node[hn].in != pat_deg.per_node[pn].in) return false;
        if (host_deg.per_node[hn].out != pat_deg.per_node[pn].out) return false;
      }
    }
    return true;
  }

  // No path through unmatched edges may connect two matched nodes.
  bool convex_ok() {
    if (!check_convexity) return true;
    std::vector<bool> in_image(host.node_count(), false);
    for (int hn : node_map)
      if (hn >= 0) in_image[hn] = true;
    std::vector<std::vector<EdgeId>> out_edges(host.node_count());
    for (EdgeId e = 0; e < host.edge_count(); ++e)
      for (NodeId n : host.edge(e).sources) out_edges[n].push_back(e);
    std::vector<bool> visited(host.node_count(), false);
    std::vector<NodeId> stack;
    for (NodeId n = 0; n < host.node_count(); ++n)
      if (in_image[n]) stack.push_back(n);
    // Traverse only unmatched edges; reaching a matched node again means the
    // path left the image and re-entered it.
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      for (EdgeId e : out_edges[n]) {
        if (host_edge_used[e]) continue;
        for (NodeId t : host.edge(e).targets) {
          if (in_image[t]) return false;
          if (!visited[t]) {
            visited[t] = true;
            stack.push_back(t);
          }
        }
      }
    }
    return true;
  }

  void emit(bool reversed, uint64_t fp) {
    MatchSite site;
    site.reversed = reversed;
    site.host_fingerprint = fp;
    for (int v : node_map) site.node_image.push_back(static_cast<NodeId>(v));
    for (int v : edge_map) site.edge_image.push_back(static_cast<EdgeId>(v));
    out.push_back(std::move(site));
  }

  // Assign pattern nodes that touch no pattern edge (wire-only patterns).
  void assign_free_nodes(size_t idx, const std::vector<NodeId>& free_nodes, bool reversed,
                         uint64_t fp) {
    if (idx == free_nodes.size()) {
      if (node_constraints_ok() && convex_ok()) emit(reversed, fp);
      return;
    }
    NodeId pn = free_nodes[idx];
    for (NodeId hn = 0; hn < host.node_count(); ++hn) {
      if (!bind_node(pn, hn)) continue;
      assign_free_nodes(idx + 1, free_nodes, reversed, fp);
      host_node_used[hn] = false;
      node_map[pn] = -1;
    }
  }

  void match_edges(size_t pe, const std::vector<NodeId>& free_nodes, bool reversed,
                   uint64_t fp) {
    if (pe == pat.edge_count()) {
      assign_free_nodes(0, free_nodes, reversed, fp);
      return;
    }
    const auto& pedge = pat.edge(static_cast<EdgeId>(pe));
    for (EdgeId he : host_by_op[pedge.op]) {
      if (host_edge_used[he]) continue;
      const auto& hedge = host.edge(he);
      std::vector<NodeId> bound;
      bool ok = true;
      auto try_bind = [&](NodeId pn, NodeId hn) {
        bool fresh = node_map[pn] < 0;
        if (!bind_node(pn, hn)) return false;
        if (fresh) bound.push_back(pn);
        return true;
      };
      for (size_t i = 0; ok && i < pedge.sources.size(); ++i)
        ok = try_bind(pedge.sources[i], hedge.sources[i]);
      for (size_t i = 0; ok && i < pedge.targets.size(); ++i)
        ok = try_bind(pedge.targets[i], hedge.targets[i]);
      if (ok) {
        edge_map[pe] = static_cast<int>(he);
        host_edge_used[he] = true;
        match_edges(pe + 1, free_nodes, reversed, fp);
        host_edge_used[he] = false;
        edge_map[pe] = -1;
      }
      unbind_nodes(bound);
      bound.clear();
    }
  }
};

} // namespace detail

// All structure-preserving injective matches of one side of `rule` into
// `host`, in a deterministic order (lexicographic in host edge then node
// ids). In monogamous mode matches must additionally be convex.
inline std::vector<MatchSite> find_matches(const Theory& t, const RewriteRule& rule,
                                           const OpenHypergraph& host,
                                           bool reversed = false) {
  const OpenHypergraph& pat = reversed ? rule.rhs : rule.lhs;
  for (const auto& e : host.edges())
    if (e.op >= t.sig->operation_count())
      fail(ErrorKind::UnknownName, "host uses an operation outside the theory signature");
  detail::Matcher m(pat, host, t.mode == TheoryMode::Monogamous,
                    t.sig->operation_count());
  std::vector<NodeId> free_nodes;
  {
    std::vector<bool> touched(pat.node_count(), false);
    for (const auto& e : pat.edges()) {
      for (NodeId n : e.sources) touched[n] = true;
      for (NodeId n : e.targets) touched[n] = true;
    }
    for (NodeId n = 0; n < pat.node_count(); ++n)
      if (!touched[n]) free_nodes.push_back(n);
  }
  m.match_edges(0, free_nodes, reversed, graph_fingerprint(host));
  return std::move(m.out);
}

// ---------------------------------------------------------------------------
// Application (double-pushout with interface-point gluing)

// Replaces the matched copy of the pattern by the other rule side. Boundary
// images are stitched by side: context structure feeding a left-boundary
// image attaches to the replacement's left boundary node, and dually. A
// pattern wire that passes straight through (a node in both interfaces) may
// therefore split its host node in two; repeated interface nodes on the
// replacement side merge host nodes instead (the Frobenius-mode glue).
inline OpenHypergraph apply_rewrite(const Theory& t, const MatchSite& site,
                                    const RewriteRule& rule, const OpenHypergraph& host) {
  if (site.host_fingerprint != graph_fingerprint(host))
    fail(ErrorKind::StaleMatch, "host changed since this match was found");
  const OpenHypergraph& pat = site.reversed ? rule.rhs : rule.lhs;
  const OpenHypergraph& rep = site.reversed ? rule.lhs : rule.rhs;

  size_t H = host.node_count();
  // Handles: 2h = in-side of host node h, 2h+1 = out-side, 2H + r = rep node r.
  UnionFind uf(2 * H + rep.node_count());
  auto in_h = [&](NodeId h) { return 2 * static_cast<size_t>(h); };
  auto out_h = [&](NodeId h) { return 2 * static_cast<size_t>(h) + 1; };
  auto rep_h = [&](NodeId r) { return 2 * H + static_cast<size_t>(r); };

  std::vector<bool> is_boundary_image(H, false);
  std::vector<bool> split(H, false);
  std::vector<bool> deleted_node(H, false);
  {
    std::vector<bool> pat_in_left(pat.node_count(), false), pat_in_right(pat.node_count(), false);
    for (NodeId n : pat.left()) pat_in_left[n] = true;
    for (NodeId n : pat.right()) pat_in_right[n] = true;
    for (NodeId pn = 0; pn < pat.node_count(); ++pn) {
      NodeId hn = site.node_image[pn];
      if (pat_in_left[pn] || pat_in_right[pn]) {
        is_boundary_image[hn] = true;
        if (pat_in_left[pn] && pat_in_right[pn]) split[hn] = true;
      } else {
        deleted_node[hn] = true;
      }
    }
  }
  for (NodeId h = 0; h < H; ++h)
    if (!split[h]) uf.unite(in_h(h), out_h(h));

  for (size_t i = 0; i < pat.left().size(); ++i)
    uf.unite(in_h(site.node_image[pat.left()[i]]), rep_h(rep.left()[i]));
  for (size_t j = 0; j < pat.right().size(); ++j)
    uf.unite(out_h(site.node_image[pat.right()[j]]), rep_h(rep.right()[j]));

  std::vector<bool> edge_deleted(host.edge_count(), false);
  for (EdgeId e : site.edge_image) edge_deleted[e] = true;

  // Collect surviving entities and give classes dense ids by representative.
  OpenHypergraph out(host.sig());
  std::map<size_t, NodeId> class_id;
  std::vector<std::pair<size_t, SortId>> entities;
  for (NodeId h = 0; h < H; ++h) {
    if (deleted_node[h]) continue;
    entities.push_back({uf.find(in_h(h)), host.node(h).sort});
    entities.push_back({uf.find(out_h(h)), host.node(h).sort});
  }
  for (NodeId r = 0; r < rep.node_count(); ++r)
    entities.push_back({uf.find(rep_h(r)), rep.node(r).sort});
  std::sort(entities.begin(), entities.end());
  for (const auto& [cls, sort] : entities) {
    if (class_id.count(cls)) continue;
    class_id[cls] = out.add_node(sort);
  }

  auto src_ref = [&](NodeId h) { return class_id.at(uf.find(out_h(h))); };
  auto tgt_ref = [&](NodeId h) { return class_id.at(uf.find(in_h(h))); };
  auto rep_ref = [&](NodeId r) { return class_id.at(uf.find(rep_h(r))); };

  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    if (edge_deleted[e]) continue;
    const auto& ed = host.edge(e);
    std::vector<NodeId> s, tg;
    for (NodeId n : ed.sources) s.push_back(src_ref(n));
    for (NodeId n : ed.targets) tg.push_back(tgt_ref(n));
    out.add_edge(ed.op, std::move(s), std::move(tg));
  }
  for (const auto& ed : rep.edges()) {
    std::vector<NodeId> s, tg;
    for (NodeId n : ed.sources) s.push_back(rep_ref(n));
    for (NodeId n : ed.targets) tg.push_back(rep_ref(n));
    out.add_edge(ed.op, std::move(s), std::move(tg));
  }
  std::vector<NodeId> l, r;
  for (NodeId n : host.left()) l.push_back(tgt_ref(n));
  for (NodeId n : host.right()) r.push_back(src_ref(n));
  out.set_left(std::move(l));
  out.set_right(std::move(r));

  if (out.left_word() != host.left_word() || out.right_word() != host.right_word())
    fail(ErrorKind::Internal, "rewrite changed the boundary");
  return out;
}

// ---------------------------------------------------------------------------
// Normalization and scripted derivations

struct NormalizeResult {
  OpenHypergraph graph;
  size_t steps = 0;
  bool capped = false;
};

// Applies the first match of the first oriented rule until none applies or
// the step cap is reached. Deterministic by rule order and match order.
inline NormalizeResult normalize(const Theory& t, OpenHypergraph host, size_t step_cap) {
  NormalizeResult res{std::move(host), 0, false};
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& rule : t.rules) {
      if (!rule.oriented) continue;
      auto matches = find_matches(t, rule, res.graph);
      if (matches.empty()) continue;
      res.graph = apply_rewrite(t, matches.front(), rule, res.graph);
      res.steps++;
      if (res.steps >= step_cap) {
        res.capped = true;
        return res;
      }
      progress = true;
      break;
    }
  }
  return res;
}

struct ReplayStep {
  std::string rule;
  size_t match_index = 0;
  bool reversed = false;
};

// Runs a scripted derivation, failing loudly when a step has no such rule or
// not enough matches. Used to certify worked proofs.
inline OpenHypergraph replay_derivation(const Theory& t, OpenHypergraph start,
                                        const std::vector<ReplayStep>& script) {
  OpenHypergraph g = std::move(start);
  for (const auto& step : script) {
    const RewriteRule* rule = t.find_rule(step.rule);
    if (!rule) fail(ErrorKind::NoSuchRule, "no rule named '" + step.rule + "'");
    auto matches = find_matches(t, *rule, g, step.reversed);
    if (step.match_index >= matches.size())
      fail(ErrorKind::NoSuchMatch,
           "rule '" + step.rule + "' has " + std::to_string(matches.size()) +
               " matches; index " + std::to_string(step.match_index) + " requested");
    g = apply_rewrite(t, matches[step.match_index], *rule, g);
  }
  return g;
}

} // namespace sdc
