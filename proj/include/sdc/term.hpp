#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sdc/signature.hpp"

namespace sdc {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// A syntax tree for morphisms of the free symmetric monoidal category:
// generators, identities, wire crossings, the empty diagram, and the two
// composition operations. Nodes are immutable and typed at construction, so
// an ill-typed tree is never representable.
class Term {
 public:
  enum class Kind { Gen, Id, Sym, Empty, Seq, Par };

  Kind kind() const { return kind_; }
  const Word& arity() const { return arity_; }
  const Word& coarity() const { return coarity_; }
  const SigPtr& sig() const { return sig_; }

  OpId op() const { return op_; }
  const Word& id_word_of() const { return word_; }
  SortId sym_x() const { return x_; }
  SortId sym_y() const { return y_; }
  const TermPtr& left() const { return left_; }
  const TermPtr& right() const { return right_; }

  static TermPtr gen(const SigPtr& sig, OpId op) {
    Term t;
    t.kind_ = Kind::Gen;
    t.sig_ = sig;
    t.op_ = op;
    t.arity_ = sig->operation(op).arity;
    t.coarity_ = sig->operation(op).coarity;
    return wrap(std::move(t));
  }

  static TermPtr gen(const SigPtr& sig, const std::string& name) {
    return gen(sig, sig->op(name));
  }

  static TermPtr id(const SigPtr& sig, Word w) {
    Term t;
    t.kind_ = Kind::Id;
    t.sig_ = sig;
    t.word_ = w;
    t.arity_ = w;
    t.coarity_ = std::move(w);
    return wrap(std::move(t));
  }

  static TermPtr sym(const SigPtr& sig, SortId x, SortId y) {
    Term t;
    t.kind_ = Kind::Sym;
    t.sig_ = sig;
    t.x_ = x;
    t.y_ = y;
    t.arity_ = {x, y};
    t.coarity_ = {y, x};
    return wrap(std::move(t));
  }

  static TermPtr empty() {
    Term t;
    t.kind_ = Kind::Empty;
    return wrap(std::move(t));
  }

  // Sequential composition; rejects terms whose middle boundary words differ.
  static TermPtr seq(const TermPtr& l, const TermPtr& r) {
    SigPtr sig = merge_sigs(l->sig_, r->sig_);
    if (l->coarity_ != r->arity_) {
      const Signature* s = sig ? sig.get() : nullptr;
      std::string lw = s ? s->word_str(l->coarity_) : "?";
      std::string rw = s ? s->word_str(r->arity_) : "?";
      fail(ErrorKind::TypeMismatch,
           "cannot compose: left coarity " + lw + " vs right arity " + rw);
    }
    Term t;
    t.kind_ = Kind::Seq;
    t.sig_ = std::move(sig);
    t.left_ = l;
    t.right_ = r;
    t.arity_ = l->arity_;
    t.coarity_ = r->coarity_;
    return wrap(std::move(t));
  }

  // Parallel composition, top then bottom; boundary words concatenate.
  static TermPtr par(const TermPtr& a, const TermPtr& b) {
    Term t;
    t.kind_ = Kind::Par;
    t.sig_ = merge_sigs(a->sig_, b->sig_);
    t.left_ = a;
    t.right_ = b;
    t.arity_ = concat(a->arity_, b->arity_);
    t.coarity_ = concat(a->coarity_, b->coarity_);
    return wrap(std::move(t));
  }

 private:
  static TermPtr wrap(Term&& t) { return std::make_shared<const Term>(std::move(t)); }

  Kind kind_ = Kind::Empty;
  SigPtr sig_;
  OpId op_ = 0;
  SortId x_ = 0, y_ = 0;
  Word word_;
  TermPtr left_, right_;
  Word arity_, coarity_;
};

inline std::pair<Word, Word> type_of(const TermPtr& t) {
  return {t->arity(), t->coarity()};
}

// Identity on a word: Empty for the unit, a right-nested stack of
// single-sort identities otherwise.
inline TermPtr id_word(const SigPtr& sig, const Word& w) {
  if (w.empty()) return Term::empty();
  TermPtr t = Term::id(sig, {w.back()});
  for (size_t i = w.size() - 1; i-- > 0;)
    t = Term::par(Term::id(sig, {w[i]}), t);
  return t;
}

namespace detail {

// sym(x, w): x.w -> w.x, one crossing per letter of w.
inline TermPtr sym_sort_word(const SigPtr& sig, SortId x, const Word& w) {
  if (w.empty()) return Term::id(sig, {x});
  TermPtr head = Term::sym(sig, x, w[0]);
  if (w.size() == 1) return head;
  Word rest(w.begin() + 1, w.end());
  TermPtr layer1 = Term::par(head, id_word(sig, rest));
  TermPtr layer2 = Term::par(Term::id(sig, {w[0]}), sym_sort_word(sig, x, rest));
  return Term::seq(layer1, layer2);
}

} // namespace detail

// The crossing of two arbitrary words, built by the usual induction from
// single-sort crossings: v.w -> w.v.
inline TermPtr sym_words(const SigPtr& sig, const Word& v, const Word& w) {
  if (v.empty()) return id_word(sig, w);
  if (w.empty()) return id_word(sig, v);
  if (v.size() == 1) return detail::sym_sort_word(sig, v[0], w);
  Word front(v.begin(), v.end() - 1);
  SortId last = v.back();
  TermPtr layer1 = Term::par(id_word(sig, front), detail::sym_sort_word(sig, last, w));
  TermPtr layer2 = Term::par(sym_words(sig, front, w), Term::id(sig, {last}));
  return Term::seq(layer1, layer2);
}

// Structural equality of syntax trees (not diagram equality).
inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Term::Kind::Gen: return a->op() == b->op();
    case Term::Kind::Id: return a->id_word_of() == b->id_word_of();
    case Term::Kind::Sym: return a->sym_x() == b->sym_x() && a->sym_y() == b->sym_y();
    case Term::Kind::Empty: return true;
    case Term::Kind::Seq:
    case Term::Kind::Par:
      return term_equal(a->left(), b->left()) && term_equal(a->right(), b->right());
  }
  return false;
}

namespace detail {
inline void print_term(const TermPtr& t, std::string& out, bool paren_seq) {
  const Signature* sig = t->sig() ? t->sig().get() : nullptr;
  switch (t->kind()) {
    case Term::Kind::Gen:
      out += sig ? sig->operation(t->op()).name : "?";
      break;
    case Term::Kind::Id: {
      out += "id(";
      const Word& w = t->id_word_of();
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += sig ? sig->object(w[i]).name : "?";
      }
      out += ")";
      break;
    }
    case Term::Kind::Sym:
      out += "sym(";
      out += sig ? sig->object(t->sym_x()).name : "?";
      out += ", ";
      out += sig ? sig->object(t->sym_y()).name : "?";
      out += ")";
      break;
    case Term::Kind::Empty:
      out += "empty";
      break;
    case Term::Kind::Seq: {
      if (paren_seq) out += "(";
      print_term(t->left(), out, false);
      out += " ; ";
      print_term(t->right(), out, false);
      if (paren_seq) out += ")";
      break;
    }
    case Term::Kind::Par: {
      out += "(";
      print_term(t->left(), out, true);
      out += " | ";
      print_term(t->right(), out, true);
      out += ")";
      break;
    }
  }
}
} // namespace detail

inline std::string term_str(const TermPtr& t) {
  std::string s;
  detail::print_term(t, s, false);
  return s;
}

} // namespace sdc
