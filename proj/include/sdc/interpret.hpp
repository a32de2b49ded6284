#pragma once

#include <map>
#include <set>
#include <vector>

#include "sdc/graph.hpp"
#include "sdc/perm.hpp"
#include "sdc/structure.hpp"
#include "sdc/term.hpp"

namespace sdc {

namespace detail {

inline OpenHypergraph gen_graph(const SigPtr& sig, OpId op) {
  OpenHypergraph g(sig);
  const auto& d = sig->operation(op);
  std::vector<NodeId> srcs, tgts;
  for (SortId s : d.arity) srcs.push_back(g.add_node(s));
  for (SortId s : d.coarity) tgts.push_back(g.add_node(s));
  g.add_edge(op, srcs, tgts);
  g.set_left(std::move(srcs));
  g.set_right(std::move(tgts));
  return g;
}

// Discrete interpretations of the Frobenius quadruple: a single node shared
// between the interfaces with the appropriate multiplicities.
inline OpenHypergraph frob_gen_graph(const SigPtr& sig, SortId sort, StructRole role) {
  OpenHypergraph g(sig);
  NodeId n = g.add_node(sort);
  switch (role) {
    case StructRole::Comult: g.set_left({n}); g.set_right({n, n}); break;
    case StructRole::Counit: g.set_left({n}); g.set_right({}); break;
    case StructRole::Mult: g.set_left({n, n}); g.set_right({n}); break;
    case StructRole::Unit: g.set_left({}); g.set_right({n}); break;
    default: fail(ErrorKind::Internal, "not a Frobenius role");
  }
  return g;
}

inline OpenHypergraph id_graph(const SigPtr& sig, const Word& w) {
  OpenHypergraph g(sig);
  std::vector<NodeId> ns;
  for (SortId s : w) ns.push_back(g.add_node(s));
  g.set_left(ns);
  g.set_right(std::move(ns));
  return g;
}

inline OpenHypergraph interpret(const TermPtr& t, const StructureMap* frob) {
  switch (t->kind()) {
    case Term::Kind::Gen: {
      if (frob) {
        auto role = frob->role_of(t->op());
        if (role && frob->is_frobenius_role(t->op()))
          return frob_gen_graph(t->sig(), role->first, role->second);
      }
      return gen_graph(t->sig(), t->op());
    }
    case Term::Kind::Id:
      return id_graph(t->sig(), t->id_word_of());
    case Term::Kind::Sym: {
      OpenHypergraph g(t->sig());
      NodeId a = g.add_node(t->sym_x());
      NodeId b = g.add_node(t->sym_y());
      g.set_left({a, b});
      g.set_right({b, a});
      return g;
    }
    case Term::Kind::Empty:
      return OpenHypergraph(t->sig());
    case Term::Kind::Seq:
      return seq_compose(interpret(t->left(), frob), interpret(t->right(), frob));
    case Term::Kind::Par:
      return par_compose(interpret(t->left(), frob), interpret(t->right(), frob));
  }
  fail(ErrorKind::Internal, "unreachable");
}

} // namespace detail

// The open-hypergraph interpretation of a term. Structurally equal terms map
// to isomorphic graphs; outputs are always monogamous.
inline OpenHypergraph from_term(const TermPtr& t) {
  return detail::interpret(t, nullptr);
}

// Like from_term, but generators marked as the Frobenius quadruple become
// discrete interface-sharing graphs, so composition merges nodes. Outputs
// range over all open hypergraphs, monogamous or not.
inline OpenHypergraph from_term_frob(const TermPtr& t, const StructureMap& marking) {
  return detail::interpret(t, &marking);
}

// Collapses every marked Frobenius hyperedge by merging its endpoints into
// one node. The result is the graph the same term denotes under the discrete
// interpretation of the quadruple. With drop_isolated, internal nodes with no
// incidences vanish (the extra-special law).
inline OpenHypergraph frobenius_contract(const OpenHypergraph& g,
                                         const StructureMap& marking,
                                         bool drop_isolated = false) {
  UnionFind uf(g.node_count());
  std::vector<bool> keep_edge(g.edge_count(), true);
  for (size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(static_cast<EdgeId>(e));
    if (!marking.is_frobenius_role(ed.op)) continue;
    keep_edge[e] = false;
    NodeId anchor = !ed.sources.empty() ? ed.sources[0] : ed.targets[0];
    for (NodeId n : ed.sources) uf.unite(anchor, n);
    for (NodeId n : ed.targets) uf.unite(anchor, n);
  }
  OpenHypergraph pruned(g.sig());
  for (const auto& n : g.nodes()) pruned.add_node(n.sort);
  for (size_t e = 0; e < g.edge_count(); ++e)
    if (keep_edge[e])
      pruned.add_edge(g.edge(static_cast<EdgeId>(e)).op,
                      g.edge(static_cast<EdgeId>(e)).sources,
                      g.edge(static_cast<EdgeId>(e)).targets);
  pruned.set_left(g.left());
  pruned.set_right(g.right());
  OpenHypergraph out = pruned.quotient(uf);
  if (!drop_isolated) return out;
  DegreeReport deg = degrees(out);
  std::vector<NodeId> alive;
  std::vector<NodeId> remap(out.node_count());
  OpenHypergraph res(out.sig());
  for (NodeId n = 0; n < out.node_count(); ++n) {
    const auto& d = deg.per_node[n];
    if (d.in + d.out + d.left_mult + d.right_mult == 0) continue;
    remap[n] = res.add_node(out.node(n).sort);
  }
  for (const auto& e : out.edges()) {
    std::vector<NodeId> s, t;
    for (NodeId n : e.sources) s.push_back(remap[n]);
    for (NodeId n : e.targets) t.push_back(remap[n]);
    res.add_edge(e.op, std::move(s), std::move(t));
  }
  std::vector<NodeId> l, r;
  for (NodeId n : out.left()) l.push_back(remap[n]);
  for (NodeId n : out.right()) r.push_back(remap[n]);
  res.set_left(std::move(l));
  res.set_right(std::move(r));
  return res;
}

// ---------------------------------------------------------------------------
// Graph -> term extraction (monogamous acyclic graphs).

inline TermPtr to_term(const OpenHypergraph& g) {
  MonogamyReport mono = is_monogamous(g);
  if (!mono.ok)
    fail(ErrorKind::NotMonogamous,
         std::string("node ") + std::to_string(mono.witness) + " violates " +
             monogamy_violation_name(mono.violation));
  if (has_directed_cycle(g))
    fail(ErrorKind::CyclicGraph, "graph has a directed cycle through hyperedges");
  SigPtr sig = g.sig();

  TermPtr term; // built layer by layer; null means identity so far
  auto append = [&](const TermPtr& layer) {
    term = term ? Term::seq(term, layer) : layer;
  };

  std::vector<NodeId> frontier = g.left();
  auto frontier_word = [&]() {
    Word w;
    for (NodeId n : frontier) w.push_back(g.node(n).sort);
    return w;
  };

  std::vector<bool> done(g.edge_count(), false);
  size_t remaining = g.edge_count();
  while (remaining > 0) {
    std::set<NodeId> avail(frontier.begin(), frontier.end());
    std::vector<EdgeId> ready;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (done[e]) continue;
      bool ok = true;
      for (NodeId n : g.edge(e).sources)
        if (!avail.count(n)) { ok = false; break; }
      if (ok) ready.push_back(e);
    }
    if (ready.empty())
      fail(ErrorKind::Internal, "layering stuck on a monogamous acyclic graph");

    // Route consumed wires to the top, grouped per edge, passthroughs below.
    std::map<NodeId, size_t> pos;
    for (size_t i = 0; i < frontier.size(); ++i) pos[frontier[i]] = i;
    std::vector<size_t> new_order; // old positions in target order
    std::set<size_t> consumed;
    for (EdgeId e : ready)
      for (NodeId n : g.edge(e).sources) {
        new_order.push_back(pos[n]);
        consumed.insert(pos[n]);
      }
    std::vector<NodeId> passthrough;
    for (size_t i = 0; i < frontier.size(); ++i)
      if (!consumed.count(i)) {
        new_order.push_back(i);
        passthrough.push_back(frontier[i]);
      }
    Permutation perm;
    perm.size = frontier.size();
    perm.images.resize(frontier.size());
    for (size_t dst = 0; dst < new_order.size(); ++dst) perm.images[new_order[dst]] = dst;
    if (!perm.is_identity()) append(permutation_term(sig, frontier_word(), perm));

    TermPtr layer;
    auto stack = [&](const TermPtr& piece) {
      layer = layer ? Term::par(layer, piece) : piece;
    };
    for (EdgeId e : ready) stack(Term::gen(sig, g.edge(e).op));
    if (!passthrough.empty()) {
      Word w;
      for (NodeId n : passthrough) w.push_back(g.node(n).sort);
      stack(id_word(sig, w));
    }
    if (layer) append(layer);

    std::vector<NodeId> next;
    for (EdgeId e : ready)
      for (NodeId n : g.edge(e).targets) next.push_back(n);
    for (NodeId n : passthrough) next.push_back(n);
    frontier = std::move(next);
    for (EdgeId e : ready) { done[e] = true; --remaining; }
  }

  // Final shuffle onto the right interface order.
  std::map<NodeId, size_t> want;
  for (size_t j = 0; j < g.right().size(); ++j) want[g.right()[j]] = j;
  if (frontier.size() != g.right().size())
    fail(ErrorKind::Internal, "frontier does not match right interface");
  Permutation fin;
  fin.size = frontier.size();
  fin.images.resize(frontier.size());
  for (size_t i = 0; i < frontier.size(); ++i) {
    auto it = want.find(frontier[i]);
    if (it == want.end()) fail(ErrorKind::Internal, "dangling frontier wire");
    fin.images[i] = it->second;
  }
  if (!fin.is_identity()) append(permutation_term(sig, frontier_word(), fin));

  return term ? term : id_word(sig, g.left_word());
}

// ---------------------------------------------------------------------------
// Graph -> term over the Frobenius-extended signature (total).

namespace detail {

inline TermPtr mult_tree(const SigPtr& sig, const StructureMap& m, SortId s, size_t n) {
  auto op_of = [&](StructRole r) {
    auto o = m.op_for(s, r);
    if (!o) fail(ErrorKind::MissingCompactStructure,
                 "sort lacks Frobenius structure for extraction");
    return *o;
  };
  if (n == 0) return Term::gen(sig, op_of(StructRole::Unit));
  if (n == 1) return Term::id(sig, {s});
  TermPtr rest = mult_tree(sig, m, s, n - 1);
  return Term::seq(Term::par(Term::id(sig, {s}), rest), Term::gen(sig, op_of(StructRole::Mult)));
}

inline TermPtr comult_tree(const SigPtr& sig, const StructureMap& m, SortId s, size_t n) {
  auto op_of = [&](StructRole r) {
    auto o = m.op_for(s, r);
    if (!o) fail(ErrorKind::MissingCompactStructure,
                 "sort lacks Frobenius structure for extraction");
    return *o;
  };
  if (n == 0) return Term::gen(sig, op_of(StructRole::Counit));
  if (n == 1) return Term::id(sig, {s});
  TermPtr rest = comult_tree(sig, m, s, n - 1);
  return Term::seq(Term::gen(sig, op_of(StructRole::Comult)), Term::par(Term::id(sig, {s}), rest));
}

inline TermPtr spider(const SigPtr& sig, const StructureMap& m, SortId s, size_t n_in, size_t n_out) {
  return Term::seq(mult_tree(sig, m, s, n_in), comult_tree(sig, m, s, n_out));
}

} // namespace detail

// A term realizing the wiring that connects each input/output port to the
// spider of its block. Blocks are indexed 0..block_count-1; a block may have
// no ports at all (an isolated scalar spider). Port lists carry (sort, block).
inline TermPtr partition_term(const SigPtr& sig, const StructureMap& marking,
                              const std::vector<std::pair<SortId, size_t>>& inputs,
                              const std::vector<std::pair<SortId, size_t>>& outputs,
                              const std::vector<SortId>& block_sorts) {
  size_t blocks = block_sorts.size();
  std::vector<std::vector<size_t>> in_of(blocks), out_of(blocks);
  for (size_t i = 0; i < inputs.size(); ++i) in_of.at(inputs[i].second).push_back(i);
  for (size_t j = 0; j < outputs.size(); ++j) out_of.at(outputs[j].second).push_back(j);

  Word in_word, out_word;
  for (auto& [s, b] : inputs) in_word.push_back(s);
  for (auto& [s, b] : outputs) out_word.push_back(s);

  // Permute inputs so each block's ports are contiguous, in block order.
  Permutation pin;
  pin.size = inputs.size();
  pin.images.resize(inputs.size());
  {
    size_t dst = 0;
    for (size_t b = 0; b < blocks; ++b)
      for (size_t i : in_of[b]) pin.images[i] = dst++;
  }
  TermPtr term = permutation_term(sig, in_word, pin);

  TermPtr spiders;
  for (size_t b = 0; b < blocks; ++b) {
    TermPtr sp = detail::spider(sig, marking, block_sorts[b], in_of[b].size(), out_of[b].size());
    spiders = spiders ? Term::par(spiders, sp) : sp;
  }
  if (spiders) term = Term::seq(term, spiders);

  // Grouped outputs back to the requested order.
  Permutation pout;
  pout.size = outputs.size();
  pout.images.resize(outputs.size());
  {
    size_t src = 0;
    for (size_t b = 0; b < blocks; ++b)
      for (size_t j : out_of[b]) pout.images[src++] = j;
  }
  Word grouped_out;
  for (size_t b = 0; b < blocks; ++b)
    for (size_t j : out_of[b]) grouped_out.push_back(out_word[j]);
  term = Term::seq(term, permutation_term(sig, grouped_out, pout));
  return term;
}

// Total extraction: any open hypergraph becomes a term over the signature
// extended with the Frobenius quadruple. Cycles and fan-in/out are realized
// with cups built from unit;comult, so no acyclicity is needed.
inline TermPtr to_term_frob(const OpenHypergraph& g, const SigPtr& ext_sig,
                            const StructureMap& marking) {
  SigPtr sig = ext_sig;
  Word u = g.left_word();
  const size_t n_edges = g.edge_count();

  auto cup_for = [&](SortId s) -> TermPtr {
    auto un = marking.op_for(s, StructRole::Unit);
    auto cm = marking.op_for(s, StructRole::Comult);
    if (!un || !cm)
      fail(ErrorKind::MissingCompactStructure, "sort lacks Frobenius structure");
    return Term::seq(Term::gen(sig, *un), Term::gen(sig, *cm));
  };

  // Slot s of the flattened source list gets one cup producing (q_s, p_s).
  std::vector<std::pair<EdgeId, size_t>> slots;
  for (EdgeId e = 0; e < n_edges; ++e)
    for (size_t k = 0; k < g.edge(e).sources.size(); ++k) slots.push_back({e, k});

  TermPtr term = id_word(sig, u);
  for (auto& [e, k] : slots) {
    SortId s = g.node(g.edge(e).sources[k]).sort;
    term = Term::par(term, cup_for(s));
  }

  // u . (q0 p0 q1 p1 ...) -> u . Q . P
  size_t S = slots.size();
  {
    Permutation perm;
    perm.size = u.size() + 2 * S;
    perm.images.resize(perm.size);
    for (size_t i = 0; i < u.size(); ++i) perm.images[i] = i;
    for (size_t s = 0; s < S; ++s) {
      perm.images[u.size() + 2 * s] = u.size() + s;         // q_s
      perm.images[u.size() + 2 * s + 1] = u.size() + S + s; // p_s
    }
    if (!perm.is_identity()) {
      Word wpre = u;
      for (auto& [e, k] : slots) {
        SortId s = g.node(g.edge(e).sources[k]).sort;
        wpre.push_back(s);
        wpre.push_back(s);
      }
      term = Term::seq(term, permutation_term(sig, wpre, perm));
    }
  }

  // Apply every hyperedge to the P block.
  {
    Word uq = u;
    for (auto& [e, k] : slots) uq.push_back(g.node(g.edge(e).sources[k]).sort);
    TermPtr boxes;
    for (EdgeId e = 0; e < n_edges; ++e) {
      TermPtr box = Term::gen(sig, g.edge(e).op);
      boxes = boxes ? Term::par(boxes, box) : box;
    }
    if (boxes) term = Term::seq(term, Term::par(id_word(sig, uq), boxes));
  }

  // Wire everything through one spider per node.
  std::vector<std::pair<SortId, size_t>> inputs, outputs;
  for (size_t i = 0; i < u.size(); ++i) inputs.push_back({u[i], g.left()[i]});
  for (auto& [e, k] : slots) {
    NodeId n = g.edge(e).sources[k];
    inputs.push_back({g.node(n).sort, n});
  }
  for (EdgeId e = 0; e < n_edges; ++e)
    for (NodeId n : g.edge(e).targets) inputs.push_back({g.node(n).sort, n});
  for (NodeId n : g.right()) outputs.push_back({g.node(n).sort, n});

  std::vector<SortId> block_sorts;
  for (NodeId n = 0; n < g.node_count(); ++n) block_sorts.push_back(g.node(n).sort);

  TermPtr wiring = partition_term(sig, marking, inputs, outputs, block_sorts);
  return term ? Term::seq(term, wiring) : wiring;
}

} // namespace sdc
