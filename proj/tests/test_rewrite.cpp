#include <catch2/catch_amalgamated.hpp>

#include "sdc/decide.hpp"
#include "sdc/interpret.hpp"
#include "sdc/invariants.hpp"
#include "sdc/io.hpp"
#include "sdc/spider.hpp"
#include "sdc/theories.hpp"
#include "testutil.hpp"

using namespace sdc;
using namespace sdc::testing;

namespace {

TermPtr role_term(const Theory& t, StructRole r, SortId s = 0) {
  return Term::gen(t.sig, *t.marking.op_for(s, r));
}

// Shorthand builders over a theory's (single-sorted) signature.
struct T1 {
  const Theory& th;
  SortId s = 0;
  TermPtr mult, unit, comult, counit, id1;
  explicit T1(const Theory& t) : th(t) {
    if (t.marking.op_for(s, StructRole::Mult)) mult = role_term(t, StructRole::Mult, s);
    if (t.marking.op_for(s, StructRole::Unit)) unit = role_term(t, StructRole::Unit, s);
    if (t.marking.op_for(s, StructRole::Comult)) comult = role_term(t, StructRole::Comult, s);
    if (t.marking.op_for(s, StructRole::Counit)) counit = role_term(t, StructRole::Counit, s);
    id1 = Term::id(t.sig, {s});
  }
};

} // namespace

TEST_CASE("builtin theory rule counts") {
  CHECK(builtin_theory("monoid").rules.size() == 3);
  CHECK(builtin_theory("comm_monoid").rules.size() == 4);
  CHECK(builtin_theory("comonoid").rules.size() == 3);
  CHECK(builtin_theory("cocomm_comonoid").rules.size() == 4);
  CHECK(builtin_theory("bimonoid").rules.size() == 10);
  CHECK(builtin_theory("frobenius").rules.size() == 9);
  CHECK(builtin_theory("special_frobenius").rules.size() == 10);
  CHECK(builtin_theory("scFrob").rules.size() == 11);
  CHECK(builtin_theory("extra_special_frobenius").rules.size() == 12);
  CHECK(builtin_theory("cd").rules.size() == 4);
  CHECK(builtin_theory("self_dual_compact").rules.size() == 2);
  CHECK(builtin_theory("compact_closed").rules.size() == 2);
  CHECK(builtin_theory("hypergraph_cat").rules.size() == 11);
  CHECK(builtin_theory("biproduct").rules.size() == 12);

  // two operations get two scheme instances each
  SigPtr base = Signature::make({"x"}, {{"f", {"x"}, {"x"}}, {"g", {"x", "x"}, {"x"}}});
  Theory cart = builtin_theory("cartesian", base);
  CHECK(cart.rules.size() == 4 + 4);

  CHECK_THROWS_MATCHES(builtin_theory("nonsense"), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::UnknownTheory;
                       }));
}

TEST_CASE("find_matches counts") {
  Theory mon = builtin_theory("monoid");
  T1 g(mon);

  // left-unitality redex: exactly one match
  OpenHypergraph host = from_term(Term::seq(Term::par(g.unit, g.id1), g.mult));
  const RewriteRule* unit_l = mon.find_rule("unit_l");
  REQUIRE(unit_l);
  CHECK(find_matches(mon, *unit_l, host).size() == 1);

  // associativity in nested multiplication trees
  const RewriteRule* assoc = mon.find_rule("assoc");
  TermPtr three = Term::seq(Term::par(g.mult, g.id1), g.mult);
  TermPtr four = Term::seq(Term::par(three, g.id1), g.mult);
  CHECK(find_matches(mon, *assoc, from_term(three)).size() == 1);
  CHECK(find_matches(mon, *assoc, from_term(four)).size() == 2);

  // nothing matches inside the empty diagram
  OpenHypergraph empty = from_term(Term::empty());
  for (const auto& r : mon.rules) CHECK(find_matches(mon, r, empty).empty());
}

TEST_CASE("apply_rewrite on unitality and Frobenius redexes") {
  Theory mon = builtin_theory("monoid");
  T1 g(mon);
  OpenHypergraph host = from_term(Term::seq(Term::par(g.unit, g.id1), g.mult));
  const RewriteRule* unit_l = mon.find_rule("unit_l");
  auto matches = find_matches(mon, *unit_l, host);
  REQUIRE(matches.size() == 1);
  OpenHypergraph out = apply_rewrite(mon, matches[0], *unit_l, host);
  CHECK(iso_check(out, from_term(g.id1)));

  // a stale site is rejected
  CHECK_THROWS_MATCHES(apply_rewrite(mon, matches[0], *unit_l, out), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::StaleMatch;
                       }));

  // applying a rule to a host equal to its lhs gives its rhs
  Theory frob = builtin_theory("frobenius");
  const RewriteRule* law = frob.find_rule("frob");
  REQUIRE(law);
  auto sites = find_matches(frob, *law, law->lhs);
  REQUIRE_FALSE(sites.empty());
  CHECK(iso_check(apply_rewrite(frob, sites[0], *law, law->lhs), law->rhs));
}

TEST_CASE("rewrites preserve boundaries and well-formedness") {
  Theory th = builtin_theory("bimonoid");
  Rng rng(41);
  std::vector<OpId> ops;
  for (auto role : frobenius_roles()) ops.push_back(*th.marking.op_for(0, role));
  for (int rep = 0; rep < 60; ++rep) {
    Word w(1 + pick(rng, 3), 0);
    TermPtr t = random_term(rng, th.sig, w, 4, ops);
    OpenHypergraph host = from_term(t);
    for (const auto& rule : th.rules) {
      auto sites = find_matches(th, rule, host);
      if (sites.empty()) continue;
      OpenHypergraph out = apply_rewrite(th, sites[pick(rng, sites.size())], rule, host);
      CHECK(out.well_formed());
      CHECK(out.left_word() == host.left_word());
      CHECK(out.right_word() == host.right_word());
    }
  }
}

TEST_CASE("normalize: unit elimination and right-nesting") {
  Theory cm = builtin_theory("comm_monoid");
  T1 g(cm);
  // ((a.b).c) with a unit thrown in
  TermPtr messy = Term::seq(
      Term::par(Term::seq(Term::par(Term::seq(Term::par(g.unit, g.id1), g.mult), g.id1), g.mult),
                g.id1),
      g.mult);
  auto res = normalize(cm, from_term(messy), 100);
  CHECK_FALSE(res.capped);
  CHECK(res.steps > 0);
  // no unit generators remain
  for (const auto& e : res.graph.edges())
    CHECK(cm.marking.role_of(e.op)->second != StructRole::Unit);
  // right-nested comb: normal form of the 3-fold tree
  TermPtr comb = Term::seq(Term::par(g.id1, g.mult), g.mult);
  CHECK(iso_check(res.graph, from_term(comb)));

  // an already-normal graph takes zero steps
  auto again = normalize(cm, res.graph, 100);
  CHECK(again.steps == 0);
}

TEST_CASE("spider normal form") {
  Theory frob = builtin_theory("frobenius");
  T1 g(frob);

  auto spiders = spider_normal_form(from_term(g.comult), frob.marking);
  REQUIRE(spiders.size() == 1);
  CHECK(spiders[0] == Spider{0, 1, 2, 0});

  // Frobenius law lhs: connected, 2 left, 2 right, no loop
  TermPtr lhs = Term::seq(Term::par(g.comult, g.id1), Term::par(g.id1, g.mult));
  auto s2 = spider_normal_form(from_term(lhs), frob.marking);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == Spider{0, 2, 2, 0});

  // comult;mult forms one inner loop; the special law forgets it
  TermPtr bubble = Term::seq(g.comult, g.mult);
  auto s3 = spider_normal_form(from_term(bubble), frob.marking);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].loops == 1);
  auto s4 = spider_normal_form(from_term(bubble), frob.marking, true);
  CHECK(s4[0].loops == 0);

  // mixed generators are rejected
  SigPtr base = Signature::make({"x"}, {{"d", {"x"}, {"x"}}});
  Theory hcat = builtin_theory("hypergraph_cat", base);
  TermPtr mixed = Term::seq(Term::gen(hcat.sig, "d"), role_term(hcat, StructRole::Counit));
  CHECK_THROWS_MATCHES(spider_normal_form(from_term(mixed), hcat.marking), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::MixedGenerators;
                       }));
}

TEST_CASE("normalize reaches spider form under scFrob orientation") {
  Theory sc = builtin_theory("scFrob");
  Rng rng(43);
  std::vector<OpId> ops;
  for (auto role : frobenius_roles()) ops.push_back(*sc.marking.op_for(0, role));
  for (int rep = 0; rep < 40; ++rep) {
    Word w(1 + pick(rng, 2), 0);
    TermPtr t = random_term(rng, sc.sig, w, 4, ops);
    OpenHypergraph g = from_term(t);
    auto res = normalize(sc, g, 500);
    CHECK_FALSE(res.capped);
    // the spider data is preserved and all special/unit redexes are gone
    auto before = spider_partition_key(g, sc.marking, false, false);
    auto after = spider_partition_key(res.graph, sc.marking, false, false);
    REQUIRE(before.has_value());
    REQUIRE(after.has_value());
    CHECK(*before == *after);
    for (const auto& rule : sc.rules)
      if (rule.oriented) CHECK(find_matches(sc, rule, res.graph).empty());
  }
}

TEST_CASE("decide_eq basics") {
  Theory sc = builtin_theory("scFrob");
  T1 g(sc);

  // two scFrob terms with the same open hypergraph
  TermPtr lhs = Term::seq(Term::par(g.comult, g.id1), Term::par(g.id1, g.mult));
  TermPtr mid = Term::seq(g.mult, g.comult);
  CHECK(decide_eq(sc, from_term(lhs), from_term(mid)) == EqVerdict::Equal);

  // boundary mismatch is an error
  CHECK_THROWS_MATCHES(decide_eq(sc, from_term(g.comult), from_term(g.mult)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::BoundaryMismatch;
                       }));

  // mult vs mult-after-crossing: distinguished under plain monoid ...
  Theory mon = builtin_theory("monoid");
  T1 m(mon);
  TermPtr plain = m.mult;
  TermPtr crossed = Term::seq(Term::sym(mon.sig, 0, 0), m.mult);
  CHECK(decide_eq(mon, from_term(plain), from_term(crossed)) == EqVerdict::NotEqual);
  // ... and identified under comm_monoid
  Theory cm = builtin_theory("comm_monoid");
  CHECK(decide_eq(cm, from_term(plain), from_term(crossed)) == EqVerdict::Equal);
}

TEST_CASE("derived left-unitality by bounded search") {
  // commutativity + right-unitality + associativity, no left-unitality, and
  // no registered keys: forces the bidirectional search to find the proof.
  Theory cm = builtin_theory("comm_monoid");
  Theory reduced;
  reduced.name = "comm_monoid_no_unit_l";
  reduced.sig = cm.sig;
  reduced.marking = cm.marking;
  for (const auto& r : cm.rules)
    if (r.name != "unit_l") reduced.rules.push_back(r);
  T1 g(cm);
  OpenHypergraph a = from_term(Term::seq(Term::par(g.unit, g.id1), g.mult));
  OpenHypergraph b = from_term(g.id1);
  CHECK(decide_eq(reduced, a, b, 10) == EqVerdict::Equal);
}

TEST_CASE("decide_eq congruence under random contexts") {
  Theory cm = builtin_theory("comm_monoid");
  T1 g(cm);
  Rng rng(47);
  std::vector<OpId> ops = {*cm.marking.op_for(0, StructRole::Mult),
                           *cm.marking.op_for(0, StructRole::Unit)};
  TermPtr a = Term::seq(Term::sym(cm.sig, 0, 0), g.mult);
  TermPtr b = g.mult;
  REQUIRE(decide_eq(cm, from_term(a), from_term(b)) == EqVerdict::Equal);
  for (int rep = 0; rep < 30; ++rep) {
    // a one-hole context: pre- and post-compose, stack a random diagram
    TermPtr pre = random_term(rng, cm.sig, Word(2, 0), 2, ops);
    TermPtr side = random_term(rng, cm.sig, Word(1 + pick(rng, 2), 0), 2, ops);
    auto wrap = [&](const TermPtr& hole) {
      TermPtr t = Term::par(hole, side);
      Word from = t->arity();
      TermPtr glue = random_term(rng, cm.sig, from, 1, ops);
      (void)glue;
      return t;
    };
    CHECK(decide_eq(cm, from_term(wrap(a)), from_term(wrap(b))) == EqVerdict::Equal);
  }
}

TEST_CASE("frobenius-mode gluing merges nodes") {
  SigPtr sig = Signature::make({"x"}, {});
  Theory t;
  t.name = "merge-test";
  t.sig = sig;
  t.mode = TheoryMode::Frobenius;
  OpenHypergraph lhs(sig);
  {
    NodeId a = lhs.add_node(0), b = lhs.add_node(0);
    lhs.set_left({a, b});
    lhs.set_right({a, b});
  }
  OpenHypergraph rhs(sig);
  {
    NodeId c = rhs.add_node(0);
    rhs.set_left({c, c});
    rhs.set_right({c, c});
  }
  t.rules.push_back(make_rule("fuse", lhs, rhs, true));
  OpenHypergraph host = from_term(id_word(sig, {0, 0}));
  auto sites = find_matches(t, t.rules[0], host);
  REQUIRE_FALSE(sites.empty());
  OpenHypergraph out = apply_rewrite(t, sites[0], t.rules[0], host);
  CHECK(out.node_count() == 1);
  CHECK(out.left() == std::vector<NodeId>{0, 0});
  CHECK(out.right() == std::vector<NodeId>{0, 0});
}

TEST_CASE("replay: empty script and errors") {
  Theory mon = builtin_theory("monoid");
  T1 g(mon);
  OpenHypergraph start = from_term(g.mult);
  CHECK(iso_check(replay_derivation(mon, start, {}), start));
  CHECK_THROWS_MATCHES(replay_derivation(mon, start, {{"nope", 0, false}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NoSuchRule;
                       }));
  CHECK_THROWS_MATCHES(replay_derivation(mon, start, {{"assoc", 0, false}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NoSuchMatch;
                       }));
}

TEST_CASE("replay: derived left-unitality from commutativity") {
  Theory cm = builtin_theory("comm_monoid");
  T1 g(cm);
  OpenHypergraph start = from_term(Term::seq(Term::par(g.unit, g.id1), g.mult));
  OpenHypergraph end = replay_derivation(cm, start, {{"comm", 0, true}, {"unit_r", 0, false}});
  CHECK(iso_check(end, from_term(g.id1)));
}

TEST_CASE("replay: the Frobenius middle form equals the left form") {
  // coun, frob, coas, frob, coun
  Theory fr = builtin_theory("frobenius");
  T1 g(fr);
  OpenHypergraph mid = from_term(Term::seq(g.mult, g.comult));
  OpenHypergraph left =
      from_term(Term::seq(Term::par(g.comult, g.id1), Term::par(g.id1, g.mult)));
  OpenHypergraph end = replay_derivation(fr, mid,
                                         {{"counit_r", 1, true},
                                          {"frob", 0, true},
                                          {"coassoc", 0, false},
                                          {"frob", 0, false},
                                          {"counit_r", 0, false}});
  CHECK(iso_check(end, left));
}

TEST_CASE("replay: Frobenius-derived cups and caps satisfy yanking") {
  Theory fr = builtin_theory("frobenius");
  T1 g(fr);
  TermPtr cup = Term::seq(g.unit, g.comult);
  TermPtr cap = Term::seq(g.mult, g.counit);
  OpenHypergraph zigzag =
      from_term(Term::seq(Term::par(cup, g.id1), Term::par(g.id1, cap)));
  OpenHypergraph end = replay_derivation(
      fr, zigzag, {{"frob_l", 0, false}, {"counit_r", 0, false}, {"unit_l", 0, false}});
  CHECK(iso_check(end, from_term(g.id1)));
}

TEST_CASE("replay: Cartesian plus compact closed degenerates") {
  Theory th = merge_theories("self_dual_compact", "cartesian");
  TermPtr cup = Term::gen(th.sig, "cup");
  TermPtr counit = Term::gen(th.sig, "counit");
  TermPtr id1 = Term::id(th.sig, {0});

  // stage one: the cup splits into two discard-capped cups
  OpenHypergraph split = replay_derivation(
      th, from_term(cup),
      {{"counit_l", 0, true}, {"counit_r", 2, true}, {"dup_cup", 0, false}});
  TermPtr keep_first = Term::seq(cup, Term::par(id1, counit));
  TermPtr keep_second = Term::seq(cup, Term::par(counit, id1));
  CHECK(iso_check(split, from_term(Term::par(keep_first, keep_second))));

  // stage two: the identity wire disconnects
  OpenHypergraph disc = replay_derivation(th, from_term(id1),
                                          {{"yank_l", 0, true},
                                           {"counit_l", 1, true},
                                           {"counit_r", 3, true},
                                           {"dup_cup", 0, false},
                                           {"yank_l", 0, false}});
  OpenHypergraph target = from_term(Term::par(counit, keep_first));
  CHECK(iso_check(disc, target));
}

TEST_CASE("bimonoid normalization factors comonoids before monoids") {
  Theory bi = builtin_theory("bimonoid");
  Rng rng(53);
  std::vector<OpId> ops;
  for (auto role : frobenius_roles()) ops.push_back(*bi.marking.op_for(0, role));
  for (int rep = 0; rep < 40; ++rep) {
    Word w(1 + pick(rng, 2), 0);
    TermPtr t = random_term(rng, bi.sig, w, 5, ops);
    auto res = normalize(bi, from_term(t), 3000);
    REQUIRE_FALSE(res.capped);
    // no monoid-generator edge may feed a comonoid-generator edge downstream
    const OpenHypergraph& g = res.graph;
    auto is_monoid = [&](OpId op) {
      auto r = bi.marking.role_of(op)->second;
      return r == StructRole::Mult || r == StructRole::Unit;
    };
    std::vector<std::vector<EdgeId>> out_edges(g.node_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      for (NodeId n : g.edge(e).sources) out_edges[n].push_back(e);
    std::function<bool(EdgeId, std::vector<bool>&)> reaches_comonoid =
        [&](EdgeId e, std::vector<bool>& seen) -> bool {
      if (seen[e]) return false;
      seen[e] = true;
      if (!is_monoid(g.edge(e).op)) return true;
      for (NodeId n : g.edge(e).targets)
        for (EdgeId f : out_edges[n])
          if (reaches_comonoid(f, seen)) return true;
      return false;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!is_monoid(g.edge(e).op)) continue;
      std::vector<bool> seen(g.edge_count(), false);
      seen[e] = true;
      bool bad = false;
      for (NodeId n : g.edge(e).targets)
        for (EdgeId f : out_edges[n]) bad = bad || reaches_comonoid(f, seen);
      CHECK_FALSE(bad);
    }
  }
}

TEST_CASE("closed extra-special diagrams vanish") {
  Theory es = builtin_theory("extra_special_frobenius");
  T1 g(es);
  std::vector<TermPtr> closed = {
      Term::seq(g.unit, g.counit),
      Term::seq(Term::seq(g.unit, g.comult), g.mult) // needs a counit to close
  };
  // close the second one
  closed[1] = Term::seq(closed[1], g.counit);
  // a two-component closed diagram
  closed.push_back(Term::par(closed[0], closed[1]));
  for (const auto& t : closed) {
    auto res = normalize(es, from_term(t), 200);
    CHECK_FALSE(res.capped);
    CHECK(res.graph.node_count() == 0);
    CHECK(res.graph.edge_count() == 0);
  }
}
