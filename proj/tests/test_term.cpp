/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "tcsynth/unify.hpp"

using namespace tcsynth;
using tcsynth::testing::build;
using tcsynth::testing::term;

TEST_CASE("nat arithmetic and parsing") {
    CHECK(Nat(0).str() == "0");
    CHECK(Nat(42).str() == "42");
    CHECK((Nat(2) + Nat(2)).str() == "4");
    CHECK((Nat(3) * Nat(7)).str() == "21");
    CHECK(Nat::parse("123456789012345678901234567890").has_value());
    Nat big = *Nat::parse("99999999999999999999");
    CHECK((big + Nat(1)).str() == "100000000000000000000");
    CHECK((big * Nat(0)).is_zero());
    CHECK((*Nat::parse("123456789123456789") * *Nat::parse("987654321987654321")).str() ==
          "121932631356500531347203169112635269");
    CHECK(!Nat::parse("12x").has_value());
    CHECK(!Nat::parse("").has_value());
    CHECK(Nat(7).to_u64() == 7u);
}

TEST_CASE("whnf folds literal arithmetic") {
    auto built = build("");
    CHECK(whnf(term("2 + 2"), built.env) == Term::nat(4));
    CHECK(whnf(Term::nat(4), built.env) == Term::nat(4));
    // arguments reduce before the head is examined
    CHECK(whnf(term("3 * (1 + 1)"), built.env) == Term::nat(6));
    // non-literal arguments leave the term unchanged
    Term open_add = Term::constant("add", {Term::var("x"), Term::nat(2)});
    CHECK(whnf(open_add, built.env) == open_add);
}

TEST_CASE("whnf unfolds reducible definitions at the head") {
    auto built = build("def four : nat := 2 + 2\n"
                       "def double (n : nat) : nat := n + n\n"
                       "def opaque_ty (n : nat) : Type := opaque\n");
    CHECK(whnf(term("four"), built.env) == Term::nat(4));
    CHECK(whnf(term("double 3"), built.env) == Term::nat(6));
    Term stuck = term("opaque_ty 3");
    CHECK(whnf(stuck, built.env) == stuck);
    // under-applied definitions stay put
    Term bare = term("double");
    CHECK(whnf(bare, built.env) == bare);
}

TEST_CASE("whnf is idempotent") {
    auto built = build("def double (n : nat) : nat := n + n\n");
    for (const char* src : {"2 + 2", "double 5", "f (1 + 1)", "x", "double (double 2)"}) {
        Term t = term(src);
        Term once = whnf(t, built.env);
        CHECK(whnf(once, built.env) == once);
    }
}

TEST_CASE("unify matches up to definitional reduction") {
    auto built = build("def zmod (n : nat) : Type := opaque\n"
                       "class char_p (R : Type) (p : nat)\n");
    Substitution s;
    CHECK(unify(term("char_p (zmod 4) (2 + 2)"), term("char_p (zmod 4) 4"), built.env, s));
    CHECK(s.size() == 0); // no new bindings
}

TEST_CASE("unify binds metas with occurs check") {
    auto built = build("");
    SUBCASE("flex-rigid binding") {
        Substitution s;
        CHECK(unify(Term::meta(0), term("monoid nat"), built.env, s));
        CHECK(s.apply(Term::meta(0)) == term("monoid nat"));
    }
    SUBCASE("occurs check rejects cyclic bindings") {
        Substitution s;
        CHECK(!unify(Term::meta(0), Term::constant("list", {Term::meta(0)}), built.env, s));
    }
    SUBCASE("head, arity and literal mismatches fail") {
        Substitution s;
        CHECK(!unify(term("monoid nat"), term("group nat"), built.env, s));
        CHECK(!unify(term("pair nat nat"), term("pair nat"), built.env, s));
        CHECK(!unify(Term::nat(3), Term::nat(4), built.env, s));
        CHECK(!unify(term("x1"), term("y1"), built.env, s));
    }
}

TEST_CASE("apply_subst resolves binding chains to a fixpoint") {
    Substitution s;
    s.bind(0, Term::meta(1));
    s.bind(1, term("int"));

    // independent oracle: substitute one binding step at a time until stable
    Term stepped = Term::constant("add_group", {Term::meta(0)});
    for (int i = 0; i < 10; ++i) {
        std::vector<Term> args;
        bool changed = false;
        for (const Term& a : stepped.args()) {
            if (a.is_meta() && s.lookup(a.meta_id())) {
                args.push_back(*s.lookup(a.meta_id()));
                changed = true;
            } else {
                args.push_back(a);
            }
        }
        if (!changed)
            break;
        stepped = Term::constant(stepped.name(), args);
    }
    CHECK(stepped == term("add_group int"));
    CHECK(s.apply(Term::constant("add_group", {Term::meta(0)})) == stepped);

    Substitution empty;
    Term t = term("monoid (set nat)");
    CHECK(empty.apply(t) == t);
}

TEST_CASE("term_size counts nodes") {
    CHECK(term_size(Term::nat(4)) == 1);
    CHECK(term_size(term("monoid nat")) == 2);
    CHECK(term_size(term("char_p (zmod 4) 4")) == 4);
    CHECK(term_size(Term::meta(0)) == 1);
    CHECK(term_size(Term::var("x")) == 1);
}

TEST_CASE("term rendering round-trips through the term parser") {
    for (const char* src :
         {"monoid nat", "char_p (zmod 4) (2 + 2)", "2 + 2", "pi nat (set nat)", "nat"}) {
        Term t = term(src);
        CHECK(term(render_term(t)) == t);
    }
}

namespace {

// Small random terms over a fixed signature, for the property tests.
Term random_term(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 3);
    switch (pick(rng)) {
    case 0: return Term::var("x");
    case 1: return Term::meta(std::uniform_int_distribution<unsigned>(0, 2)(rng));
    case 2: return Term::nat(std::uniform_int_distribution<std::uint64_t>(0, 3)(rng));
    case 3: return Term::constant("a");
    case 4: return Term::constant("g", {random_term(rng, depth - 1)});
    default:
        return Term::constant("f", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
    }
}

} // namespace

TEST_CASE("property: unification is sound and symmetric in success") {
    auto built = build("");
    std::mt19937 rng(20260808);
    int successes = 0;
    for (int i = 0; i < 2000; ++i) {
        Term t1 = random_term(rng, 3);
        Term t2 = random_term(rng, 3);
        Substitution s;
        bool ok = unify(t1, t2, built.env, s);
        Substitution s_rev;
        bool ok_rev = unify(t2, t1, built.env, s_rev);
        CHECK(ok == ok_rev);
        if (ok) {
            ++successes;
            CHECK(nf(s.apply(t1), built.env) == nf(s.apply(t2), built.env));
        }
    }
    CHECK(successes > 100); // the generator must exercise the success path
}

namespace {

Term strip_metas(const Term& t) {
    if (t.is_meta())
        return Term::constant("a");
    if (!t.is_const() || t.args().empty())
        return t;
    std::vector<Term> args;
    for (const Term& a : t.args())
        args.push_back(strip_metas(a));
    return Term::constant(t.name(), std::move(args));
}

} // namespace

TEST_CASE("property: binding metas to non-meta terms never shrinks a term") {
    std::mt19937 rng(7);
    for (int i = 0; i < 500; ++i) {
        Term t = random_term(rng, 3);
        Substitution s;
        for (unsigned id = 0; id < 3; ++id) {
            if (!occurs_in(id, t, s))
                continue;
            s.bind(id, strip_metas(random_term(rng, 1)));
        }
        Term image = s.apply(t);
        CHECK(!contains_meta(image));
        CHECK(term_size(image) >= term_size(t));
    }
}

TEST_CASE("trail rollback restores the substitution") {
    Substitution s;
    s.bind(0, term("nat"));
    std::size_t mark = s.mark();
    s.bind(1, term("int"));
    s.bind(2, term("rat"));
    CHECK(s.size() == 3);
    s.rollback(mark);
    CHECK(s.size() == 1);
    CHECK(s.lookup(0) != nullptr);
    CHECK(s.lookup(1) == nullptr);
}
