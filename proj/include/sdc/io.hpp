#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "sdc/graph.hpp"

namespace sdc {

// Line-based text format: one line per node, edge, and interface list.
// Deterministic given the graph's (dense, deterministic) ids.
inline void write_graph(std::ostream& os, const OpenHypergraph& g) {
  const Signature* sig = g.sig() ? g.sig().get() : nullptr;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    os << "node " << n << " " << (sig ? sig->object(g.node(n).sort).name : std::to_string(g.node(n).sort))
       << "\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    os << "edge " << e << " " << (sig ? sig->operation(ed.op).name : std::to_string(ed.op)) << " :";
    for (NodeId n : ed.sources) os << " " << n;
    os << " ->";
    for (NodeId n : ed.targets) os << " " << n;
    os << "\n";
  }
  os << "left";
  for (NodeId n : g.left()) os << " " << n;
  os << "\nright";
  for (NodeId n : g.right()) os << " " << n;
  os << "\n";
}

inline std::string graph_str(const OpenHypergraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

// DOT emission: nodes as filled dots, hyperedges as labeled boxes, interface
// markers colored blue (left) and red (right). Endpoint order is carried on
// the connecting arrows as slot labels.
inline void write_dot(std::ostream& os, const OpenHypergraph& g) {
  const Signature* sig = g.sig() ? g.sig().get() : nullptr;
  os << "digraph diagram {\n";
  os << "  rankdir=LR;\n";
  for (NodeId n = 0; n < g.node_count(); ++n) {
    os << "  n" << n << " [shape=point, width=0.12, xlabel=\""
       << (sig ? sig->object(g.node(n).sort).name : std::to_string(g.node(n).sort)) << "\"];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    os << "  e" << e << " [shape=box, label=\""
       << (sig ? sig->operation(ed.op).name : std::to_string(ed.op)) << "\"];\n";
    for (size_t i = 0; i < ed.sources.size(); ++i)
      os << "  n" << ed.sources[i] << " -> e" << e << " [label=\"" << i << "\"];\n";
    for (size_t i = 0; i < ed.targets.size(); ++i)
      os << "  e" << e << " -> n" << ed.targets[i] << " [label=\"" << i << "\"];\n";
  }
  for (size_t i = 0; i < g.left().size(); ++i) {
    os << "  L" << i << " [shape=plaintext, fontcolor=blue, label=\"L" << i << "\"];\n";
    os << "  L" << i << " -> n" << g.left()[i] << " [color=blue, arrowhead=none];\n";
  }
  for (size_t i = 0; i < g.right().size(); ++i) {
    os << "  R" << i << " [shape=plaintext, fontcolor=red, label=\"R" << i << "\"];\n";
    os << "  n" << g.right()[i] << " -> R" << i << " [color=red, arrowhead=none];\n";
  }
  os << "}\n";
}

inline std::string dot_str(const OpenHypergraph& g) {
  std::ostringstream os;
  write_dot(os, g);
  return os.str();
}

} // namespace sdc
