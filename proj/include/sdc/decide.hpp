#pragma once

#include <deque>
#include <map>

#include "sdc/canon.hpp"
#include "sdc/rewrite.hpp"

namespace sdc {

enum class EqVerdict { Equal, NotEqual, Unknown };

inline const char* verdict_name(EqVerdict v) {
  switch (v) {
    case EqVerdict::Equal: return "equal";
    case EqVerdict::NotEqual: return "not-equal";
    case EqVerdict::Unknown: return "unknown";
  }
  return "?";
}

namespace detail {

inline std::vector<OpenHypergraph> rewrite_neighbors(const Theory& t,
                                                     const OpenHypergraph& g,
                                                     size_t max_edges) {
  std::vector<OpenHypergraph> out;
  for (const auto& rule : t.rules) {
    for (bool rev : {false, true}) {
      const OpenHypergraph& pat = rev ? rule.rhs : rule.lhs;
      const OpenHypergraph& rep = rev ? rule.lhs : rule.rhs;
      if (g.edge_count() - std::min(g.edge_count(), pat.edge_count()) + rep.edge_count() >
          max_edges)
        continue;
      for (const auto& site : find_matches(t, rule, g, rev))
        out.push_back(apply_rewrite(t, site, rule, g));
    }
  }
  return out;
}

// Bidirectional closure search with canonical-form memoization. The budget
// counts expanded graphs; growth is capped a little above the start sizes.
inline bool search_meet(const Theory& t, const OpenHypergraph& a, const OpenHypergraph& b,
                        size_t budget) {
  size_t max_edges = std::max(a.edge_count(), b.edge_count()) + 3;
  std::map<std::string, bool> side_a, side_b;
  std::deque<OpenHypergraph> qa, qb;
  std::string ca = canonical_encoding(a), cb = canonical_encoding(b);
  if (ca == cb) return true;
  side_a[ca] = true;
  side_b[cb] = true;
  qa.push_back(a);
  qb.push_back(b);
  size_t used = 0;
  while ((!qa.empty() || !qb.empty()) && used < budget) {
    bool pick_a = !qa.empty() && (qb.empty() || side_a.size() <= side_b.size());
    auto& q = pick_a ? qa : qb;
    auto& mine = pick_a ? side_a : side_b;
    auto& theirs = pick_a ? side_b : side_a;
    OpenHypergraph g = std::move(q.front());
    q.pop_front();
    ++used;
    for (auto& h : rewrite_neighbors(t, g, max_edges)) {
      std::string c = canonical_encoding(h);
      if (theirs.count(c)) return true;
      if (mine.emplace(c, true).second) q.push_back(std::move(h));
    }
  }
  return false;
}

} // namespace detail

// Decides equality in the congruence generated by the theory's rules.
// Registered model keys answer first: a complete key decides outright, a
// sound key can only refute. Otherwise diagrams are normalized with the
// oriented rules and compared up to isomorphism, and finally a bounded
// bidirectional search over rule applications runs. `unknown` reports an
// exhausted budget, never a definite answer.
inline EqVerdict decide_eq(const Theory& t, const OpenHypergraph& a,
                           const OpenHypergraph& b, size_t budget = 256,
                           size_t normalize_cap = 4000) {
  if (a.left_word() != b.left_word() || a.right_word() != b.right_word())
    fail(ErrorKind::BoundaryMismatch, "diagrams have different boundary words");
  for (const auto& cm : t.countermodels) {
    auto ka = cm.key(a);
    auto kb = cm.key(b);
    if (!ka || !kb) continue;
    if (*ka != *kb) return EqVerdict::NotEqual;
    if (cm.complete) return EqVerdict::Equal;
  }
  if (t.rules.empty())
    return iso_check(a, b) ? EqVerdict::Equal : EqVerdict::NotEqual;
  NormalizeResult na = normalize(t, a, normalize_cap);
  NormalizeResult nb = normalize(t, b, normalize_cap);
  if (iso_check(na.graph, nb.graph)) return EqVerdict::Equal;
  if (detail::search_meet(t, na.graph, nb.graph, budget)) return EqVerdict::Equal;
  return EqVerdict::Unknown;
}

} // namespace sdc
