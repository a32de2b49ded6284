#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sdc/term.hpp"

namespace sdc {

// A bijection on {0..size-1}. images[i] is the right-boundary position that
// receives left-boundary wire i, reading diagrams left to right.
struct Permutation {
  size_t size = 0;
  std::vector<size_t> images;

  static Permutation identity(size_t n) {
    Permutation p;
    p.size = n;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
  }

  static Permutation make(std::vector<size_t> images) {
    Permutation p;
    p.size = images.size();
    p.images = std::move(images);
    std::vector<bool> seen(p.size, false);
    for (size_t v : p.images) {
      if (v >= p.size || seen[v])
        fail(ErrorKind::SyntaxError, "image list is not a permutation");
      seen[v] = true;
    }
    return p;
  }

  // this followed by q (diagrammatic order).
  Permutation then(const Permutation& q) const {
    Permutation r;
    r.size = size;
    r.images.resize(size);
    for (size_t i = 0; i < size; ++i) r.images[i] = q.images[images[i]];
    return r;
  }

  Permutation tensor(const Permutation& q) const {
    Permutation r;
    r.size = size + q.size;
    r.images.resize(r.size);
    for (size_t i = 0; i < size; ++i) r.images[i] = images[i];
    for (size_t i = 0; i < q.size; ++i) r.images[size + i] = size + q.images[i];
    return r;
  }

  bool is_identity() const {
    for (size_t i = 0; i < size; ++i)
      if (images[i] != i) return false;
    return true;
  }

  bool operator==(const Permutation& o) const {
    return size == o.size && images == o.images;
  }
};

// Decomposes p into adjacent transpositions (i i+1), listed in diagrammatic
// order. Selection sort on the target positions keeps it deterministic.
inline std::vector<size_t> adjacent_transpositions(const Permutation& p) {
  // Bubble-sort the destination list; each exchange is one crossing layer,
  // emitted in diagrammatic order.
  std::vector<size_t> swaps;
  std::vector<size_t> cur = p.images;
  for (size_t pass = 0; pass + 1 < p.size; ++pass) {
    for (size_t i = 0; i + 1 < p.size; ++i) {
      if (cur[i] > cur[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        swaps.push_back(i);
      }
    }
  }
  return swaps;
}

// A crossings-only term over the word `w` realizing `p` (positional: output
// position p.images[i] carries input wire i). The sorts of `w` travel with
// the wires, so this works over mixed words as well.
inline TermPtr permutation_term(const SigPtr& sig, const Word& w, const Permutation& p) {
  if (w.size() != p.size)
    fail(ErrorKind::TypeMismatch, "permutation size does not match word length");
  if (p.is_identity()) return id_word(sig, w);
  TermPtr t;
  Word cur = w;
  for (size_t i : adjacent_transpositions(p)) {
    // layer: id^i | sym | id^(n-i-2), applied to the running word
    TermPtr layer = Term::sym(sig, cur[i], cur[i + 1]);
    if (i + 2 < cur.size()) {
      Word tail(cur.begin() + i + 2, cur.end());
      layer = Term::par(layer, id_word(sig, tail));
    }
    if (i > 0) {
      Word head(cur.begin(), cur.begin() + i);
      layer = Term::par(id_word(sig, head), layer);
    }
    std::swap(cur[i], cur[i + 1]);
    t = t ? Term::seq(t, layer) : layer;
  }
  return t;
}

inline TermPtr perm_to_term(const SigPtr& sig, const Permutation& p, SortId sort) {
  return permutation_term(sig, Word(p.size, sort), p);
}

// Reads the wire permutation off a crossings-only term; rejects generators.
inline Permutation term_to_perm(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Gen:
      fail(ErrorKind::NotPermutationTerm,
           "term contains generator '" +
               (t->sig() ? t->sig()->operation(t->op()).name : std::string("?")) + "'");
    case Term::Kind::Id:
      return Permutation::identity(t->id_word_of().size());
    case Term::Kind::Sym:
      return Permutation::make({1, 0});
    case Term::Kind::Empty:
      return Permutation::identity(0);
    case Term::Kind::Seq:
      return term_to_perm(t->left()).then(term_to_perm(t->right()));
    case Term::Kind::Par:
      return term_to_perm(t->left()).tensor(term_to_perm(t->right()));
  }
  fail(ErrorKind::Internal, "unreachable");
}

// The block transposition exchanging |v| and |w| wires, as a permutation.
inline Permutation block_transposition(size_t n, size_t m) {
  Permutation p;
  p.size = n + m;
  p.images.resize(n + m);
  for (size_t i = 0; i < n; ++i) p.images[i] = m + i;
  for (size_t j = 0; j < m; ++j) p.images[n + j] = j;
  return p;
}

} // namespace sdc
