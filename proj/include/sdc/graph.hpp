#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sdc/signature.hpp"

namespace sdc {

using NodeId = uint32_t;
using EdgeId = uint32_t;

struct Node {
  SortId sort;
};

struct Hyperedge {
  OpId op;
  std::vector<NodeId> sources;
  std::vector<NodeId> targets;
};

// Union-find with smallest-member representatives, used wherever nodes merge.
class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t find(size_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a; else parent_[a] = b;
  }

 private:
  mutable std::vector<size_t> parent_;
};

// An open hypergraph: nodes interpret loose wire ends, hyperedges interpret
// boxes, and the two ordered interface lists play the role of the cospan legs
// into the carrier. Interface lists may repeat nodes.
class OpenHypergraph {
 public:
  OpenHypergraph() = default;
  OpenHypergraph(SigPtr sig) : sig_(std::move(sig)) {}

  NodeId add_node(SortId sort) {
    nodes_.push_back({sort});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  EdgeId add_edge(OpId op, std::vector<NodeId> sources, std::vector<NodeId> targets) {
    if (sig_) {
      const auto& d = sig_->operation(op);
      if (d.arity.size() != sources.size() || d.coarity.size() != targets.size())
        fail(ErrorKind::TypeMismatch, "edge endpoint count does not match '" + d.name + "'");
      for (size_t i = 0; i < sources.size(); ++i)
        if (nodes_.at(sources[i]).sort != d.arity[i])
          fail(ErrorKind::TypeMismatch, "source sort mismatch on '" + d.name + "'");
      for (size_t i = 0; i < targets.size(); ++i)
        if (nodes_.at(targets[i]).sort != d.coarity[i])
          fail(ErrorKind::TypeMismatch, "target sort mismatch on '" + d.name + "'");
    }
    edges_.push_back({op, std::move(sources), std::move(targets)});
    return static_cast<EdgeId>(edges_.size() - 1);
  }

  void set_left(std::vector<NodeId> ids) { left_ = std::move(ids); }
  void set_right(std::vector<NodeId> ids) { right_ = std::move(ids); }

  const SigPtr& sig() const { return sig_; }
  void set_sig(SigPtr s) { sig_ = std::move(s); }

  size_t node_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }
  const Node& node(NodeId n) const { return nodes_.at(n); }
  const Hyperedge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const std::vector<NodeId>& left() const { return left_; }
  const std::vector<NodeId>& right() const { return right_; }

  Word left_word() const {
    Word w;
    for (NodeId n : left_) w.push_back(nodes_.at(n).sort);
    return w;
  }
  Word right_word() const {
    Word w;
    for (NodeId n : right_) w.push_back(nodes_.at(n).sort);
    return w;
  }

  bool well_formed() const {
    for (const auto& e : edges_) {
      for (NodeId n : e.sources)
        if (n >= nodes_.size()) return false;
      for (NodeId n : e.targets)
        if (n >= nodes_.size()) return false;
    }
    for (NodeId n : left_)
      if (n >= nodes_.size()) return false;
    for (NodeId n : right_)
      if (n >= nodes_.size()) return false;
    return true;
  }

  // Rebuilds the graph with nodes merged per `uf` and renumbered densely.
  // Representatives keep the smallest original id, and surviving classes are
  // numbered in ascending order of that representative.
  OpenHypergraph quotient(const UnionFind& uf) const {
    OpenHypergraph out(sig_);
    std::vector<NodeId> remap(nodes_.size(), 0);
    std::vector<bool> isrep(nodes_.size(), false);
    NodeId next = 0;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (uf.find(i) == i) {
        isrep[i] = true;
        remap[i] = next++;
        out.add_node(nodes_[i].sort);
      }
    }
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (!isrep[i]) {
        size_t r = uf.find(i);
        if (nodes_[r].sort != nodes_[i].sort)
          fail(ErrorKind::TypeMismatch, "merging nodes of different sorts");
        remap[i] = remap[r];
      }
    }
    for (const auto& e : edges_) {
      std::vector<NodeId> s, t;
      s.reserve(e.sources.size());
      t.reserve(e.targets.size());
      for (NodeId n : e.sources) s.push_back(remap[n]);
      for (NodeId n : e.targets) t.push_back(remap[n]);
      out.edges_.push_back({e.op, std::move(s), std::move(t)});
    }
    std::vector<NodeId> l, r;
    for (NodeId n : left_) l.push_back(remap[n]);
    for (NodeId n : right_) r.push_back(remap[n]);
    out.set_left(std::move(l));
    out.set_right(std::move(r));
    return out;
  }

 private:
  SigPtr sig_;
  std::vector<Node> nodes_;
  std::vector<Hyperedge> edges_;
  std::vector<NodeId> left_;
  std::vector<NodeId> right_;
};

// Disjoint union with interfaces concatenated g-then-h.
inline OpenHypergraph par_compose(const OpenHypergraph& g, const OpenHypergraph& h) {
  OpenHypergraph out(merge_sigs(g.sig(), h.sig()));
  for (const auto& n : g.nodes()) out.add_node(n.sort);
  NodeId off = static_cast<NodeId>(g.node_count());
  for (const auto& n : h.nodes()) out.add_node(n.sort);
  for (const auto& e : g.edges()) out.add_edge(e.op, e.sources, e.targets);
  for (const auto& e : h.edges()) {
    std::vector<NodeId> s, t;
    for (NodeId n : e.sources) s.push_back(n + off);
    for (NodeId n : e.targets) t.push_back(n + off);
    out.add_edge(e.op, std::move(s), std::move(t));
  }
  std::vector<NodeId> l = g.left(), r = g.right();
  for (NodeId n : h.left()) l.push_back(n + off);
  for (NodeId n : h.right()) r.push_back(n + off);
  out.set_left(std::move(l));
  out.set_right(std::move(r));
  return out;
}

// Glues g's right interface to h's left interface, merging node pairs
// transitively, and keeps (g.left, h.right) as the composite interfaces.
inline OpenHypergraph seq_compose(const OpenHypergraph& g, const OpenHypergraph& h) {
  if (g.right_word() != h.left_word()) {
    const Signature* s = g.sig() ? g.sig().get() : (h.sig() ? h.sig().get() : nullptr);
    fail(ErrorKind::BoundaryMismatch,
         "cannot compose graphs: " +
             (s ? s->word_str(g.right_word()) : std::string("?")) + " vs " +
             (s ? s->word_str(h.left_word()) : std::string("?")));
  }
  OpenHypergraph both = par_compose(g, h);
  // par_compose appended h's interfaces after g's; rebuild the glue data.
  NodeId off = static_cast<NodeId>(g.node_count());
  UnionFind uf(both.node_count());
  for (size_t i = 0; i < g.right().size(); ++i)
    uf.unite(g.right()[i], h.left()[i] + off);
  std::vector<NodeId> l = g.left(), r;
  for (NodeId n : h.right()) r.push_back(n + off);
  both.set_left(std::move(l));
  both.set_right(std::move(r));
  return both.quotient(uf);
}

struct NodeDegrees {
  size_t in = 0;
  size_t out = 0;
  size_t left_mult = 0;
  size_t right_mult = 0;
};

struct DegreeReport {
  std::vector<NodeDegrees> per_node;
};

inline DegreeReport degrees(const OpenHypergraph& g) {
  DegreeReport rep;
  rep.per_node.resize(g.node_count());
  for (const auto& e : g.edges()) {
    for (NodeId n : e.sources) rep.per_node[n].out++;
    for (NodeId n : e.targets) rep.per_node[n].in++;
  }
  for (NodeId n : g.left()) rep.per_node[n].left_mult++;
  for (NodeId n : g.right()) rep.per_node[n].right_mult++;
  return rep;
}

enum class MonogamyViolation {
  LeftInterfaceRepeat,
  RightInterfaceRepeat,
  InDegree,
  OutDegree,
};

inline const char* monogamy_violation_name(MonogamyViolation v) {
  switch (v) {
    case MonogamyViolation::LeftInterfaceRepeat: return "left-interface-repeat";
    case MonogamyViolation::RightInterfaceRepeat: return "right-interface-repeat";
    case MonogamyViolation::InDegree: return "in-degree";
    case MonogamyViolation::OutDegree: return "out-degree";
  }
  return "?";
}

struct MonogamyReport {
  bool ok = true;
  NodeId witness = 0;
  MonogamyViolation violation = MonogamyViolation::InDegree;

  explicit operator bool() const { return ok; }
};

// Interface maps injective; in-degree 0 on left-interfaced nodes and 1
// elsewhere, dually for out-degrees. Characterizes graphs that come from
// plain symmetric monoidal terms.
inline MonogamyReport is_monogamous(const OpenHypergraph& g) {
  DegreeReport deg = degrees(g);
  MonogamyReport rep;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const auto& d = deg.per_node[n];
    if (d.left_mult > 1) return {false, n, MonogamyViolation::LeftInterfaceRepeat};
    if (d.right_mult > 1) return {false, n, MonogamyViolation::RightInterfaceRepeat};
    size_t want_in = d.left_mult ? 0 : 1;
    size_t want_out = d.right_mult ? 0 : 1;
    if (d.in != want_in) return {false, n, MonogamyViolation::InDegree};
    if (d.out != want_out) return {false, n, MonogamyViolation::OutDegree};
  }
  return rep;
}

// True when some directed path of hyperedges revisits a node.
inline bool has_directed_cycle(const OpenHypergraph& g) {
  // DFS over edges: edge a precedes edge b when a target of a is a source of b.
  size_t m = g.edge_count();
  std::vector<std::vector<size_t>> succ(m);
  std::map<NodeId, std::vector<size_t>> by_source;
  for (size_t e = 0; e < m; ++e)
    for (NodeId n : g.edge(static_cast<EdgeId>(e)).sources) by_source[n].push_back(e);
  for (size_t e = 0; e < m; ++e)
    for (NodeId n : g.edge(static_cast<EdgeId>(e)).targets) {
      auto it = by_source.find(n);
      if (it != by_source.end())
        for (size_t f : it->second) succ[e].push_back(f);
    }
  std::vector<int> state(m, 0);
  std::vector<std::pair<size_t, size_t>> stack;
  for (size_t root = 0; root < m; ++root) {
    if (state[root]) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [e, i] = stack.back();
      if (i < succ[e].size()) {
        size_t f = succ[e][i++];
        if (state[f] == 1) return true;
        if (state[f] == 0) {
          state[f] = 1;
          stack.push_back({f, 0});
        }
      } else {
        state[e] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

} // namespace sdc
