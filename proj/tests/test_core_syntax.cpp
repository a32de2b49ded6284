#include <catch2/catch_amalgamated.hpp>

#include "sdc/perm.hpp"
#include "sdc/term.hpp"
#include "testutil.hpp"

using namespace sdc;
using sdc::testing::sig_example;
using sdc::testing::sig_prop;

// Independent recomputation of a term's type by structural fold, used as the
// oracle for the cached typing.
static std::pair<Word, Word> fold_type(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Gen: {
      const auto& d = t->sig()->operation(t->op());
      return {d.arity, d.coarity};
    }
    case Term::Kind::Id:
      return {t->id_word_of(), t->id_word_of()};
    case Term::Kind::Sym:
      return {{t->sym_x(), t->sym_y()}, {t->sym_y(), t->sym_x()}};
    case Term::Kind::Empty:
      return {{}, {}};
    case Term::Kind::Seq: {
      auto l = fold_type(t->left());
      auto r = fold_type(t->right());
      REQUIRE(l.second == r.first);
      return {l.first, r.second};
    }
    case Term::Kind::Par: {
      auto l = fold_type(t->left());
      auto r = fold_type(t->right());
      return {concat(l.first, r.first), concat(l.second, r.second)};
    }
  }
  FAIL("unreachable");
  return {};
}

TEST_CASE("declare_signature validates and builds") {
  SigPtr sig = sig_example();
  CHECK(sig->object_count() == 2);
  CHECK(sig->operation_count() == 3);
  CHECK(sig->operation(sig->op("d")).arity == Word{sig->sort("x"), sig->sort("x")});

  SigPtr prop = sig_prop();
  CHECK(prop->object_count() == 1);
  CHECK(prop->operation_count() == 0);

  SigPtr empty = Signature::make({}, {});
  CHECK(empty->object_count() == 0);

  CHECK_THROWS_MATCHES(Signature::make({"x", "x"}, {}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::DuplicateName;
                       }));
  CHECK_THROWS_MATCHES(Signature::make({"x"}, {{"f", {"z"}, {"x"}}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::UnknownSort;
                       }));
  CHECK_THROWS_MATCHES(Signature::make({"x"}, {{"f", {}, {}}, {"f", {}, {}}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::DuplicateName;
                       }));
}

TEST_CASE("type_of on base constructors") {
  SigPtr sig = sig_example();
  SortId x = sig->sort("x"), y = sig->sort("y");

  TermPtr s = Term::sym(sig, x, y);
  CHECK(s->arity() == Word{x, y});
  CHECK(s->coarity() == Word{y, x});

  TermPtr e = Term::empty();
  CHECK(e->arity().empty());
  CHECK(e->coarity().empty());

  // The worked term built from c1, c2, d with a spare identity wire. Note the
  // declared operation types force boundary (y.x.x, y.x); no term over this
  // signature can have boundary (y.x, y.x.x) since each use of c1 must pair
  // with one use of d to balance the sort counts.
  TermPtr layer1 = Term::par(Term::par(Term::gen(sig, "c1"), Term::gen(sig, "c2")),
                             Term::id(sig, {x}));
  TermPtr layer2 = Term::par(Term::gen(sig, "d"), Term::id(sig, {x}));
  TermPtr t = Term::seq(layer1, layer2);
  CHECK(t->arity() == Word{y, x, x});
  CHECK(t->coarity() == Word{y, x});
  CHECK(fold_type(t) == type_of(t));
}

TEST_CASE("seq typechecks and reports both boundary words") {
  SigPtr sig = sig_example();
  SortId x = sig->sort("x");

  TermPtr ok = Term::seq(Term::id(sig, {x}), Term::gen(sig, "c2"));
  CHECK(ok->arity() == Word{x});
  CHECK(ok->coarity() == Word{x});

  TermPtr c1c2 = Term::seq(Term::gen(sig, "c1"), Term::gen(sig, "c2"));
  CHECK(c1c2->arity() == Word{sig->sort("y")});
  CHECK(c1c2->coarity() == Word{x});

  try {
    Term::seq(Term::gen(sig, "c1"), Term::gen(sig, "d"));
    FAIL("expected TypeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeMismatch);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("x"));
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("x.x"));
  }
}

TEST_CASE("par concatenates boundaries") {
  SigPtr sig = sig_example();
  SortId x = sig->sort("x"), y = sig->sort("y");

  TermPtr p = Term::par(Term::gen(sig, "c1"), Term::gen(sig, "c2"));
  CHECK(p->arity() == Word{y, x});
  CHECK(p->coarity() == Word{x, x});

  TermPtr ids = Term::par(Term::id(sig, {x}), Term::id(sig, {y}));
  CHECK(ids->arity() == Word{x, y});
  CHECK(ids->coarity() == Word{x, y});

  TermPtr t = Term::gen(sig, "d");
  TermPtr pe = Term::par(Term::empty(), t);
  CHECK(pe->arity() == t->arity());
  CHECK(pe->coarity() == t->coarity());
}

TEST_CASE("id_word structure") {
  SigPtr sig = sig_example();
  SortId x = sig->sort("x"), y = sig->sort("y");

  CHECK(id_word(sig, {})->kind() == Term::Kind::Empty);

  TermPtr ix = id_word(sig, {x});
  REQUIRE(ix->kind() == Term::Kind::Id);
  CHECK(ix->id_word_of() == Word{x});

  TermPtr ixy = id_word(sig, {x, y});
  REQUIRE(ixy->kind() == Term::Kind::Par);
  CHECK(ixy->left()->kind() == Term::Kind::Id);
  CHECK(ixy->right()->kind() == Term::Kind::Id);
  CHECK(ixy->arity() == Word{x, y});
}

TEST_CASE("sym_words base cases and typing") {
  SigPtr sig = sig_example();
  SortId x = sig->sort("x"), y = sig->sort("y"); // z below is x again
  TermPtr base = sym_words(sig, {x}, {y});
  REQUIRE(base->kind() == Term::Kind::Sym);

  TermPtr left_empty = sym_words(sig, {}, {x, y});
  CHECK(term_equal(left_empty, id_word(sig, {x, y})));

  TermPtr two = sym_words(sig, {x, y}, {x});
  CHECK(two->arity() == Word{x, y, x});
  CHECK(two->coarity() == Word{x, x, y});
  CHECK(fold_type(two) == type_of(two));
}

TEST_CASE("permutation terms and wire tracing") {
  SigPtr sig = sig_prop();
  SortId dot = sig->sort("dot");

  // identity on 3
  TermPtr id3 = perm_to_term(sig, Permutation::identity(3), dot);
  CHECK(term_equal(id3, id_word(sig, {dot, dot, dot})));

  // transposition
  TermPtr swap2 = perm_to_term(sig, Permutation::make({1, 0}), dot);
  REQUIRE(swap2->kind() == Term::Kind::Sym);

  // 3-cycle roundtrip
  Permutation cyc = Permutation::make({1, 2, 0});
  CHECK(term_to_perm(perm_to_term(sig, cyc, dot)) == cyc);

  // symmetry is self-inverse
  TermPtr ss = Term::seq(Term::sym(sig, dot, dot), Term::sym(sig, dot, dot));
  CHECK(term_to_perm(ss).is_identity());

  // wire tracing on (sym|id);(id|sym): wire 0 crosses down then stays at 1?
  // Trace: left wire 0 -> position 1 after first layer -> crosses to 2.
  TermPtr t = Term::seq(
      Term::par(Term::sym(sig, dot, dot), Term::id(sig, {dot})),
      Term::par(Term::id(sig, {dot}), Term::sym(sig, dot, dot)));
  Permutation p = term_to_perm(t);
  CHECK(p.images == std::vector<size_t>{2, 0, 1});

  CHECK_THROWS_MATCHES(term_to_perm(Term::gen(sig_example(), "c2")), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotPermutationTerm;
                       }));
}

TEST_CASE("perm round trips: exhaustive to 5, sampled above") {
  SigPtr sig = sig_prop();
  SortId dot = sig->sort("dot");
  for (size_t n = 0; n <= 5; ++n) {
    std::vector<size_t> images(n);
    std::iota(images.begin(), images.end(), 0);
    do {
      Permutation p = Permutation::make(images);
      CHECK(term_to_perm(perm_to_term(sig, p, dot)) == p);
    } while (std::next_permutation(images.begin(), images.end()));
  }
  sdc::testing::Rng rng(2024);
  for (size_t n = 6; n <= 7; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      std::vector<size_t> images(n);
      std::iota(images.begin(), images.end(), 0);
      std::shuffle(images.begin(), images.end(), rng);
      Permutation p = Permutation::make(images);
      CHECK(term_to_perm(perm_to_term(sig, p, dot)) == p);
    }
  }
}

TEST_CASE("sym_words realizes block transpositions") {
  SigPtr sig = sig_prop();
  SortId dot = sig->sort("dot");
  for (size_t n = 0; n <= 5; ++n) {
    for (size_t m = 0; m + n <= 5; ++m) {
      TermPtr t = sym_words(sig, Word(n, dot), Word(m, dot));
      CHECK(term_to_perm(t) == block_transposition(n, m));
    }
  }
}

TEST_CASE("typing soundness on random terms") {
  SigPtr sig = sig_example();
  sdc::testing::Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    Word w = sdc::testing::random_word(rng, sig, 4);
    TermPtr t = sdc::testing::random_term(rng, sig, w, 5, sdc::testing::all_ops(sig));
    CHECK(fold_type(t) == type_of(t));
  }
}
