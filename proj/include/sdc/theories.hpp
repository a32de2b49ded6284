#pragma once

#include <sstream>

#include "sdc/interpret.hpp"
#include "sdc/invariants.hpp"
#include "sdc/rewrite.hpp"

namespace sdc {

namespace detail {

struct TheoryBuilder {
  SigPtr sig;
  StructureMap marking;
  std::vector<RewriteRule> rules;
  bool multi_sort = false;

  TermPtr role(SortId s, StructRole r) const {
    auto op = marking.op_for(s, r);
    if (!op) fail(ErrorKind::Internal, "missing structural generator");
    return Term::gen(sig, *op);
  }

  std::string rule_name(const std::string& base, SortId s) const {
    if (!multi_sort) return base;
    return base + "_" + sig->object(s).name;
  }

  void rule(const std::string& base, SortId s, const TermPtr& lhs, const TermPtr& rhs,
            bool oriented) {
    rules.push_back(make_rule(rule_name(base, s), from_term(lhs), from_term(rhs), oriented));
  }

  TermPtr idx(SortId s) const { return Term::id(sig, {s}); }
  TermPtr sym(SortId s) const { return Term::sym(sig, s, s); }

  void monoid_rules(SortId s, bool commutative) {
    TermPtr m = role(s, StructRole::Mult), u = role(s, StructRole::Unit);
    rule("assoc", s, Term::seq(Term::par(m, idx(s)), m), Term::seq(Term::par(idx(s), m), m),
         true);
    rule("unit_l", s, Term::seq(Term::par(u, idx(s)), m), idx(s), true);
    rule("unit_r", s, Term::seq(Term::par(idx(s), u), m), idx(s), true);
    if (commutative) rule("comm", s, Term::seq(sym(s), m), m, false);
  }

  void comonoid_rules(SortId s, bool cocommutative) {
    TermPtr c = role(s, StructRole::Comult), e = role(s, StructRole::Counit);
    rule("coassoc", s, Term::seq(c, Term::par(c, idx(s))), Term::seq(c, Term::par(idx(s), c)),
         true);
    rule("counit_l", s, Term::seq(c, Term::par(e, idx(s))), idx(s), true);
    rule("counit_r", s, Term::seq(c, Term::par(idx(s), e)), idx(s), true);
    if (cocommutative) rule("cocomm", s, Term::seq(c, sym(s)), c, false);
  }

  void bimonoid_rules(SortId s) {
    TermPtr m = role(s, StructRole::Mult), u = role(s, StructRole::Unit);
    TermPtr c = role(s, StructRole::Comult), e = role(s, StructRole::Counit);
    rule("bi_mult_comult", s, Term::seq(m, c),
         Term::seq(Term::seq(Term::par(c, c),
                             Term::par(Term::par(idx(s), sym(s)), idx(s))),
                   Term::par(m, m)),
         true);
    rule("bi_unit_comult", s, Term::seq(u, c), Term::par(u, u), true);
    rule("bi_mult_counit", s, Term::seq(m, e), Term::par(e, e), true);
    rule("bi_unit_counit", s, Term::seq(u, e), Term::empty(), true);
  }

  // The Frobenius law, shipped with its two derivable variants oriented
  // toward the fused middle form (mult before comult); the pure two-sided
  // axiom stays unoriented. The fused orientation terminates: every
  // application strictly reduces the number of comult-to-mult paths.
  void frobenius_law_rules(SortId s, bool include_plain) {
    TermPtr m = role(s, StructRole::Mult), c = role(s, StructRole::Comult);
    TermPtr lhs_l = Term::seq(Term::par(c, idx(s)), Term::par(idx(s), m));
    TermPtr lhs_r = Term::seq(Term::par(idx(s), c), Term::par(m, idx(s)));
    TermPtr mid = Term::seq(m, c);
    if (include_plain) rule("frob", s, lhs_l, lhs_r, false);
    rule("frob_l", s, lhs_l, mid, true);
    rule("frob_r", s, lhs_r, mid, true);
  }

  void special_rule(SortId s) {
    rule("special", s, Term::seq(role(s, StructRole::Comult), role(s, StructRole::Mult)),
         idx(s), true);
  }

  void bone_rule(SortId s) {
    rule("bone", s, Term::seq(role(s, StructRole::Unit), role(s, StructRole::Counit)),
         Term::empty(), true);
  }

  // Multi-wire comonoid, by the inductive definition on words.
  TermPtr comult_word(const Word& w) const {
    if (w.empty()) return Term::empty();
    if (w.size() == 1) return role(w[0], StructRole::Comult);
    SortId x = w[0];
    Word v(w.begin() + 1, w.end());
    TermPtr top = Term::par(role(x, StructRole::Comult), comult_word(v));
    TermPtr shuffle = Term::par(Term::par(idx(x), sym_words(sig, {x}, v)), id_word(sig, v));
    return Term::seq(top, shuffle);
  }

  TermPtr counit_word(const Word& w) const {
    if (w.empty()) return Term::empty();
    TermPtr t = role(w[0], StructRole::Counit);
    for (size_t i = 1; i < w.size(); ++i) t = Term::par(t, role(w[i], StructRole::Counit));
    return t;
  }

  TermPtr mult_word(const Word& w) const {
    if (w.empty()) return Term::empty();
    if (w.size() == 1) return role(w[0], StructRole::Mult);
    SortId x = w[0];
    Word v(w.begin() + 1, w.end());
    TermPtr shuffle = Term::par(Term::par(idx(x), sym_words(sig, v, {x})), id_word(sig, v));
    return Term::seq(shuffle, Term::par(role(x, StructRole::Mult), mult_word(v)));
  }

  TermPtr unit_word(const Word& w) const {
    if (w.empty()) return Term::empty();
    TermPtr t = role(w[0], StructRole::Unit);
    for (size_t i = 1; i < w.size(); ++i) t = Term::par(t, role(w[i], StructRole::Unit));
    return t;
  }

  // Naturality schemes instantiated per generator.
  void dup_del_rules(const TermPtr& d, const std::string& opname) {
    const Word& v = d->arity();
    const Word& w = d->coarity();
    rules.push_back(make_rule("dup_" + opname, from_term(Term::seq(d, comult_word(w))),
                              from_term(Term::seq(comult_word(v), Term::par(d, d))), false));
    rules.push_back(make_rule("del_" + opname, from_term(Term::seq(d, counit_word(w))),
                              from_term(counit_word(v)), true));
  }

  void codup_codel_rules(const TermPtr& d, const std::string& opname) {
    const Word& v = d->arity();
    const Word& w = d->coarity();
    rules.push_back(make_rule("codup_" + opname, from_term(Term::seq(mult_word(v), d)),
                              from_term(Term::seq(Term::par(d, d), mult_word(w))), false));
    rules.push_back(make_rule("codel_" + opname, from_term(Term::seq(unit_word(v), d)),
                              from_term(unit_word(w)), true));
  }
};

inline std::vector<SortId> all_sorts(const SigPtr& sig) {
  std::vector<SortId> out;
  for (SortId s = 0; s < sig->object_count(); ++s) out.push_back(s);
  return out;
}

} // namespace detail

// The empty theory: equality is plain structural equality of diagrams.
inline Theory structural_theory(const SigPtr& base) {
  Theory t;
  t.name = "structural";
  t.sig = base;
  t.countermodels.push_back(
      {"canonical-form",
       [](const OpenHypergraph& g) { return std::optional<std::string>(canonical_encoding(g)); },
       true});
  return t;
}

// Builds one of the named theories over the given base signature (a fresh
// single-object signature when none is given). Generators the theory needs
// are appended to the base; their names are the bare role names for a
// single-object base and role_<sort> otherwise.
inline Theory builtin_theory(const std::string& name, SigPtr base = nullptr) {
  if (!base) base = Signature::make({"x"}, {});
  if (name == "structural") return structural_theory(base);

  detail::TheoryBuilder b;
  b.multi_sort = base->object_count() > 1;
  std::vector<SortId> sorts = detail::all_sorts(base);
  if (sorts.empty()) fail(ErrorKind::UnknownTheory, "theory '" + name + "' needs at least one object");

  auto extend = [&](const std::vector<StructRole>& roles) {
    auto [sig, marking] = extend_with_structure(base, sorts, roles, b.marking);
    b.sig = sig;
    b.marking = marking;
  };

  Theory t;
  t.name = name;

  if (name == "monoid" || name == "comm_monoid") {
    bool comm = name == "comm_monoid";
    extend(monoid_roles());
    for (SortId s : sorts) b.monoid_rules(s, comm);
    StructureMap marking = b.marking;
    t.countermodels.push_back({"free-monoid-words",
                               [marking, comm](const OpenHypergraph& g) {
                                 return monoid_word_key(g, marking, comm, false);
                               },
                               true});
  } else if (name == "comonoid" || name == "cocomm_comonoid") {
    bool comm = name == "cocomm_comonoid";
    extend(comonoid_roles());
    for (SortId s : sorts) b.comonoid_rules(s, comm);
    StructureMap marking = b.marking;
    t.countermodels.push_back({"free-comonoid-words",
                               [marking, comm](const OpenHypergraph& g) {
                                 return monoid_word_key(g, marking, comm, true);
                               },
                               true});
  } else if (name == "bimonoid" || name == "idempotent_bimonoid") {
    extend(frobenius_roles());
    for (SortId s : sorts) {
      b.monoid_rules(s, false);
      b.comonoid_rules(s, false);
      b.bimonoid_rules(s);
      if (name == "idempotent_bimonoid")
        b.rule("idem", s,
               Term::seq(b.role(s, StructRole::Comult), b.role(s, StructRole::Mult)),
               b.idx(s), true);
    }
    if (name == "bimonoid") {
      StructureMap marking = b.marking;
      t.countermodels.push_back({"path-count-matrix",
                                 [marking](const OpenHypergraph& g) {
                                   return path_matrix_key(g, marking);
                                 },
                                 false});
    }
  } else if (name == "frobenius" || name == "special_frobenius") {
    extend(frobenius_roles());
    for (SortId s : sorts) {
      b.monoid_rules(s, false);
      b.comonoid_rules(s, false);
      b.frobenius_law_rules(s, true);
      if (name == "special_frobenius") b.special_rule(s);
    }
    {
      bool special = name == "special_frobenius";
      StructureMap marking = b.marking;
      t.countermodels.push_back({"spider-decomposition",
                                 [marking, special](const OpenHypergraph& g) {
                                   return spider_partition_key(g, marking, !special, false);
                                 },
                                 false});
    }
  } else if (name == "scFrob" || name == "hypergraph_cat") {
    extend(frobenius_roles());
    for (SortId s : sorts) {
      b.comonoid_rules(s, true);
      b.monoid_rules(s, true);
      b.frobenius_law_rules(s, false);
      b.special_rule(s);
    }
    {
      StructureMap marking = b.marking;
      t.countermodels.push_back({"open-hypergraph",
                                 [marking](const OpenHypergraph& g) {
                                   return std::optional<std::string>(
                                       canonical_encoding(frobenius_contract(g, marking)));
                                 },
                                 true});
    }
  } else if (name == "extra_special_frobenius") {
    extend(frobenius_roles());
    for (SortId s : sorts) {
      b.comonoid_rules(s, true);
      b.monoid_rules(s, true);
      b.frobenius_law_rules(s, false);
      b.special_rule(s);
      b.bone_rule(s);
    }
    {
      StructureMap marking = b.marking;
      t.countermodels.push_back({"corelation",
                                 [marking](const OpenHypergraph& g) {
                                   return std::optional<std::string>(canonical_encoding(
                                       frobenius_contract(g, marking, true)));
                                 },
                                 true});
    }
  } else if (name == "cd") {
    extend(comonoid_roles());
    for (SortId s : sorts) b.comonoid_rules(s, true);
  } else if (name == "cartesian") {
    extend(comonoid_roles());
    for (SortId s : sorts) b.comonoid_rules(s, true);
    for (OpId o = 0; o < base->operation_count(); ++o)
      b.dup_del_rules(Term::gen(b.sig, o), base->operation(o).name);
  } else if (name == "cocartesian") {
    extend(monoid_roles());
    for (SortId s : sorts) b.monoid_rules(s, true);
    for (OpId o = 0; o < base->operation_count(); ++o)
      b.codup_codel_rules(Term::gen(b.sig, o), base->operation(o).name);
  } else if (name == "biproduct") {
    extend(frobenius_roles());
    for (SortId s : sorts) {
      b.comonoid_rules(s, true);
      b.monoid_rules(s, true);
      b.bimonoid_rules(s);
    }
    for (OpId o = 0; o < base->operation_count(); ++o) {
      b.dup_del_rules(Term::gen(b.sig, o), base->operation(o).name);
      b.codup_codel_rules(Term::gen(b.sig, o), base->operation(o).name);
    }
    {
      StructureMap marking = b.marking;
      t.countermodels.push_back({"nat-matrix",
                                 [marking](const OpenHypergraph& g) {
                                   return path_matrix_key(g, marking);
                                 },
                                 true});
    }
  } else if (name == "self_dual_compact") {
    extend(compact_roles());
    for (SortId s : sorts) {
      TermPtr cup = b.role(s, StructRole::Cup), cap = b.role(s, StructRole::Cap);
      b.rule("yank_l", s, Term::seq(Term::par(cup, b.idx(s)), Term::par(b.idx(s), cap)),
             b.idx(s), true);
      b.rule("yank_r", s, Term::seq(Term::par(b.idx(s), cup), Term::par(cap, b.idx(s))),
             b.idx(s), true);
    }
  } else if (name == "compact_closed") {
    // One dual object per base sort, with directed cups and caps.
    Signature ext = *base;
    for (SortId s : sorts) ext.add_object(base->object(s).name + "_dual");
    for (SortId s : sorts) {
      const std::string& x = base->object(s).name;
      std::string xd = x + "_dual";
      std::string cup = base->object_count() > 1 ? "cup_" + x : "cup";
      std::string cap = base->object_count() > 1 ? "cap_" + x : "cap";
      ext.add_operation(cup, {}, {x, xd});
      ext.add_operation(cap, {xd, x}, {});
    }
    b.sig = std::make_shared<const Signature>(std::move(ext));
    for (SortId s : sorts) {
      const std::string& x = base->object(s).name;
      SortId sd = b.sig->sort(x + "_dual");
      std::string cupn = base->object_count() > 1 ? "cup_" + x : "cup";
      std::string capn = base->object_count() > 1 ? "cap_" + x : "cap";
      b.marking.mark(s, StructRole::Cup, b.sig->op(cupn));
      b.marking.mark(s, StructRole::Cap, b.sig->op(capn));
      TermPtr cup = Term::gen(b.sig, cupn), cap = Term::gen(b.sig, capn);
      TermPtr idx = Term::id(b.sig, {s}), idd = Term::id(b.sig, {sd});
      b.rule("yank_l", s, Term::seq(Term::par(cup, idx), Term::par(idx, cap)), idx, true);
      b.rule("yank_r", s, Term::seq(Term::par(idd, cup), Term::par(cap, idd)), idd, true);
    }
  } else {
    fail(ErrorKind::UnknownTheory, "no builtin theory named '" + name + "'");
  }

  t.sig = b.sig;
  t.marking = b.marking;
  t.rules = std::move(b.rules);
  return t;
}

// Joins two theories over the same base signature: generators of both, rules
// of both. Used for combinations like cartesian plus self-dual compact.
inline Theory merge_theories(const std::string& name_a, const std::string& name_b,
                             SigPtr base = nullptr) {
  if (!base) base = Signature::make({"x"}, {});
  Theory a = builtin_theory(name_a, base);
  // Rebuild b's generators on top of a's extended signature.
  Theory b = builtin_theory(name_b, a.sig);
  Theory t;
  t.name = name_a + "+" + name_b;
  t.sig = b.sig;
  t.marking = b.marking;
  for (auto& [key, op] : a.marking.op_for_) t.marking.op_for_.insert({key, op});
  for (auto& [op, key] : a.marking.role_of_) t.marking.role_of_.insert({op, key});
  t.rules = a.rules;
  // a's rule graphs live over a.sig, a prefix of b.sig; retag them.
  for (auto& r : t.rules) {
    r.lhs.set_sig(t.sig);
    r.rhs.set_sig(t.sig);
  }
  for (auto& r : b.rules) {
    bool dup = false;
    for (const auto& prev : t.rules) dup = dup || prev.name == r.name;
    if (!dup) t.rules.push_back(r);
  }
  return t;
}

// Parses "name" or "name_a+name_b" into a theory over the base signature.
inline Theory theory_by_name(const std::string& spec, SigPtr base = nullptr) {
  auto plus = spec.find('+');
  if (plus == std::string::npos) return builtin_theory(spec, base);
  return merge_theories(spec.substr(0, plus), spec.substr(plus + 1), base);
}

} // namespace sdc
