#include <doctest.h>

#include "permcc/term.hpp"
#include "testutil.hpp"

using namespace permcc;

namespace {

// the board signature: T, F, bot, f/8, h/1, g/2
Signature board_sig() {
    Signature sig;
    sig.add_symbol("T", 0);
    sig.add_symbol("F", 0);
    sig.add_symbol("bot", 0);
    sig.add_symbol("f", 8);
    sig.add_symbol("h", 1);
    sig.add_symbol("g", 2);
    return sig;
}

}  // namespace

TEST_SUITE_BEGIN("terms");

TEST_CASE("validate checks arity and declaredness") {
    Signature sig;
    SymbolId a = sig.add_symbol("a", 0);
    SymbolId b = sig.add_symbol("b", 0);
    SymbolId f = sig.add_symbol("f", 2);

    CHECK_NOTHROW(validate(Term::app(f, {Term::constant(a), Term::constant(b)}), sig));
    CHECK_THROWS_WITH_AS(validate(Term::app(f, {Term::constant(a)}), sig),
                         doctest::Contains("ArityMismatch"), Error);
    CHECK_THROWS_WITH_AS(validate(Term::app(42, {}), sig), doctest::Contains("UnknownSymbol"),
                         Error);

    Signature board = board_sig();
    SymbolId F = *board.find("F");
    std::vector<TermPtr> eights(8, Term::constant(F));
    TermPtr t = Term::app(*board.find("h"), {Term::app(*board.find("f"), eights)});
    CHECK_NOTHROW(validate(t, board));
}

TEST_CASE("error messages carry the offending path") {
    Signature sig;
    SymbolId a = sig.add_symbol("a", 0);
    SymbolId f = sig.add_symbol("f", 2);
    TermPtr bad = Term::app(f, {Term::constant(a), Term::app(f, {Term::constant(a)})});
    CHECK_THROWS_WITH_AS(validate(bad, sig), doctest::Contains("position 2"), Error);
}

TEST_CASE("depth") {
    Signature sig = board_sig();
    CHECK(Term::kconst(3)->depth() == 0);
    CHECK(Term::constant(*sig.find("T"))->depth() == 0);

    TermPtr g1 = Term::app(*sig.find("g"), {Term::kconst(1), Term::kconst(0)});
    CHECK(g1->depth() == 1);
    CHECK(is_flat(g1));

    // f(b, g(b, a, a)) with a three-place g in its own signature
    Signature sig2;
    SymbolId a = sig2.add_symbol("a", 0);
    SymbolId b = sig2.add_symbol("b", 0);
    sig2.add_symbol("h", 1);
    SymbolId f = sig2.add_symbol("f", 2);
    SymbolId g = sig2.add_symbol("g", 3);
    TermPtr t = Term::app(
        f, {Term::constant(b),
            Term::app(g, {Term::constant(b), Term::constant(a), Term::constant(a)})});
    CHECK(t->depth() == 2);
    CHECK_FALSE(is_flat(t));
}

TEST_CASE("replace_at") {
    Signature sig;
    SymbolId a = sig.add_symbol("a", 0);
    SymbolId b = sig.add_symbol("b", 0);
    SymbolId c = sig.add_symbol("c", 0);
    SymbolId f = sig.add_symbol("f", 2);
    SymbolId h = sig.add_symbol("h", 1);
    SymbolId g = sig.add_symbol("g", 2);

    TermPtr fab = Term::app(f, {Term::constant(a), Term::constant(b)});
    TermPtr fcb = replace_at(fab, {1}, Term::constant(c));
    CHECK(term_equal(fcb, Term::app(f, {Term::constant(c), Term::constant(b)})));

    CHECK(term_equal(replace_at(Term::constant(a), {}, Term::constant(b)), Term::constant(b)));

    TermPtr nested = Term::app(h, {Term::app(g, {Term::kconst(1), Term::kconst(0)})});
    TermPtr swapped = replace_at(nested, {1, 2}, Term::kconst(5));
    CHECK(term_equal(swapped, Term::app(h, {Term::app(g, {Term::kconst(1), Term::kconst(5)})})));

    CHECK_THROWS_WITH_AS(replace_at(fab, {3}, Term::constant(c)),
                         doctest::Contains("InvalidPosition"), Error);
    CHECK_THROWS_WITH_AS(subterm_at(fab, {1, 1}), doctest::Contains("InvalidPosition"), Error);
}

TEST_CASE("replace_at round trip and depth bound") {
    test::Rng rng(11);
    Signature sig;
    std::vector<SymbolId> consts{sig.add_symbol("a", 0), sig.add_symbol("b", 0)};
    std::vector<SymbolId> funcs{sig.add_symbol("f", 2), sig.add_symbol("h", 1),
                                sig.add_symbol("g", 3)};
    for (int iter = 0; iter < 50; ++iter) {
        TermPtr t = test::random_term(sig, rng, consts, funcs, 3);
        TermPtr u = test::random_term(sig, rng, consts, funcs, 2);
        for (const Position& p : test::all_positions(t)) {
            CHECK(term_equal(replace_at(t, p, subterm_at(t, p)), t));
            TermPtr r = replace_at(t, p, u);
            CHECK(r->depth() <= std::max(t->depth(), static_cast<int>(p.size()) + u->depth()));
        }
    }
}

TEST_CASE("term order is total and puts K-constants first") {
    Signature sig = board_sig();
    TermPtr k0 = Term::kconst(0);
    TermPtr k1 = Term::kconst(1);
    TermPtr t = Term::constant(*sig.find("T"));
    TermPtr f = Term::constant(*sig.find("F"));

    CHECK(term_compare(k0, k1) < 0);
    CHECK(term_compare(k1, k0) > 0);
    CHECK(term_compare(k0, k0) == 0);
    CHECK(term_compare(k1, t) < 0);   // K-constants before applications
    CHECK(term_compare(t, f) < 0);    // declaration order
    TermPtr g01 = Term::app(*sig.find("g"), {k0, k1});
    TermPtr g10 = Term::app(*sig.find("g"), {k1, k0});
    CHECK(term_compare(g01, g10) < 0);
    CHECK(term_compare(g01, g01) == 0);
}

TEST_SUITE_END();
