#include <doctest.h>

#include "permcc/etheory.hpp"
#include "testutil.hpp"

using namespace permcc;

namespace {

struct BoardTheory {
    Signature sig;
    SymbolId T, F, bot, f, h, g;
    PermTheory th;
};

BoardTheory board() {
    BoardTheory b;
    b.T = b.sig.add_symbol("T", 0);
    b.F = b.sig.add_symbol("F", 0);
    b.bot = b.sig.add_symbol("bot", 0);
    b.f = b.sig.add_symbol("f", 8);
    b.h = b.sig.add_symbol("h", 1);
    b.g = b.sig.add_symbol("g", 2);
    b.sig.add_perm_generator(b.f, Permutation::from_cycles(8, {{1, 2}}));
    b.sig.add_perm_generator(b.f, Permutation::from_cycles(8, {{1, 2, 3, 4}}));
    b.sig.add_perm_generator(b.f, Permutation::from_cycles(8, {{5, 6}}));
    b.sig.add_perm_generator(b.f, Permutation::from_cycles(8, {{7, 8}}));
    b.th = decompose(b.sig);
    return b;
}

TermPtr board_state(const BoardTheory& b, const std::string& bits) {
    std::vector<TermPtr> children;
    for (char c : bits) children.push_back(Term::constant(c == 'T' ? b.T : b.F));
    return Term::app(b.f, std::move(children));
}

}  // namespace

TEST_SUITE_BEGIN("etheory");

TEST_CASE("decompose builds one group per permutation symbol") {
    BoardTheory b = board();
    REQUIRE(b.th.groups.size() == 1);
    CHECK(b.th.group_for(b.f)->order() == 96);
    CHECK(b.th.is_perm_symbol(b.f));
    CHECK_FALSE(b.th.is_perm_symbol(b.h));

    Signature empty;
    empty.add_symbol("a", 0);
    CHECK(decompose(empty).groups.empty());

    Signature comm;
    SymbolId g = comm.add_symbol("g", 2);
    comm.add_perm_generator(g, Permutation::from_cycles(2, {{1, 2}}));
    PermTheory th = decompose(comm);
    CHECK(th.group_for(g)->order() == 2);
}

TEST_CASE("an interpreted permutation symbol must be commutative") {
    Signature sig;
    SymbolId g = sig.add_symbol("g", 2);
    sig.add_perm_generator(g, Permutation::identity(2));  // group stays trivial
    BTheory b;
    b.symbol = g;
    b.tag = BTag::I;
    sig.set_b_theory(b);
    CHECK_THROWS_WITH_AS(decompose(sig), doctest::Contains("commutative"), Error);
}

TEST_CASE("flat equality test") {
    BoardTheory b = board();
    CHECK(flat_eq_test(board_state(b, "TTFFTFTF"), board_state(b, "FFTTFTTF"), b.th));
    CHECK(flat_eq_test(board_state(b, "TTFFTFTF"), board_state(b, "TTFFTFTF"), b.th));
    CHECK(flat_eq_test(board_state(b, "TTFFTFTF"), board_state(b, "TTFFTFFT"), b.th));
    // same global multiset, different multiset inside block {1..4}
    CHECK_FALSE(flat_eq_test(board_state(b, "TTFFTFTF"), board_state(b, "TFFFTTTF"), b.th));
    // different global multiset
    CHECK_FALSE(flat_eq_test(board_state(b, "TTTTTFTF"), board_state(b, "TTFFTFTF"), b.th));
    // step 1: different heads
    CHECK_FALSE(flat_eq_test(Term::app(b.h, {Term::constant(b.T)}), board_state(b, "TTTTTTTT"),
                             b.th));
    // uninterpreted heads compare syntactically
    CHECK(flat_eq_test(Term::app(b.h, {Term::kconst(0)}), Term::app(b.h, {Term::kconst(0)}), b.th));
    CHECK_FALSE(
        flat_eq_test(Term::app(b.h, {Term::kconst(0)}), Term::app(b.h, {Term::kconst(1)}), b.th));
    // constants
    CHECK(flat_eq_test(Term::kconst(2), Term::kconst(2), b.th));
    CHECK_FALSE(flat_eq_test(Term::kconst(2), Term::constant(b.T), b.th));

    TermPtr deep = Term::app(b.h, {Term::app(b.h, {Term::kconst(0)})});
    CHECK_THROWS_WITH_AS(flat_eq_test(deep, deep, b.th), doctest::Contains("NotFlat"), Error);
}

TEST_CASE("canonical_term") {
    BoardTheory b = board();
    TermPtr t = Term::constant(b.T);
    CHECK(term_equal(canonical_term(t, b.th), t));

    Signature csig;
    SymbolId c0 = csig.add_symbol("x", 0);
    SymbolId c1 = csig.add_symbol("y", 0);
    SymbolId g = csig.add_symbol("g", 2);
    csig.add_perm_generator(g, Permutation::from_cycles(2, {{1, 2}}));
    PermTheory cth = decompose(csig);
    TermPtr g10 = Term::app(g, {Term::constant(c1), Term::constant(c0)});
    TermPtr g01 = Term::app(g, {Term::constant(c0), Term::constant(c1)});
    CHECK(term_equal(canonical_term(g10, cth), g01));

    // block-wise minimal image on K-constant arguments, c1 < c2
    auto K = [](int i) { return Term::kconst(i); };
    TermPtr lhs = Term::app(b.f, {K(1), K(2), K(1), K(1), K(2), K(1), K(2), K(1)});
    TermPtr want = Term::app(b.f, {K(1), K(1), K(1), K(2), K(1), K(2), K(1), K(2)});
    CHECK(term_equal(canonical_term(lhs, b.th), want));
}

TEST_CASE("ground equality modulo E") {
    BoardTheory b = board();
    TermPtr s = Term::app(b.h, {board_state(b, "TTFFTFTF")});
    CHECK(ground_eq_mod_e(s, s, b.th));
    // congruence through the uninterpreted head
    CHECK(ground_eq_mod_e(s, Term::app(b.h, {board_state(b, "FFTTFTTF")}), b.th));
    CHECK_FALSE(ground_eq_mod_e(s, Term::app(b.h, {board_state(b, "TTTTTFTF")}), b.th));

    // f(xs) is E-equal to f(act(pi, xs)) for every group element
    std::vector<TermPtr> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(Term::kconst(i));
    TermPtr base = Term::app(b.f, xs);
    for (size_t i = 0; i < b.th.group_for(b.f)->elements().size(); i += 7) {
        const Permutation& pi = b.th.group_for(b.f)->elements()[i];
        CHECK(ground_eq_mod_e(base, Term::app(b.f, pi.act(xs)), b.th));
    }
}

TEST_CASE("canonical_term is idempotent and stable under context") {
    test::Rng rng(42);
    for (int iter = 0; iter < 60; ++iter) {
        test::RandomInstance inst = test::make_random_instance(9000 + iter);
        PermTheory th = decompose(inst.sig);
        TermPtr t = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 3);
        TermPtr c1 = canonical_term(t, th);
        CHECK(term_equal(canonical_term(c1, th), c1));
    }
}

TEST_CASE("decided equality is a congruence under context embedding") {
    test::Rng rng(404);
    for (int iter = 0; iter < 80; ++iter) {
        test::RandomInstance inst = test::make_random_instance(15'000 + iter);
        PermTheory th = decompose(inst.sig);
        TermPtr s = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 2);
        TermPtr t = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 2);
        TermPtr ctx = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 2);
        std::vector<Position> positions = test::all_positions(ctx);
        const Position& p = positions[rng.below(positions.size())];
        CHECK(ground_eq_mod_e(s, t, th) <=
              ground_eq_mod_e(replace_at(ctx, p, s), replace_at(ctx, p, t), th));
    }
}

TEST_CASE("flat test agrees with the canonical path on flat terms") {
    test::Rng rng(43);
    for (int iter = 0; iter < 200; ++iter) {
        test::RandomInstance inst = test::make_random_instance(11000 + iter);
        PermTheory th = decompose(inst.sig);
        TermPtr s = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 1);
        TermPtr t = test::random_term(inst.sig, rng, inst.consts, inst.funcs, 1);
        CHECK(flat_eq_test(s, t, th) == ground_eq_mod_e(s, t, th));
    }
}

TEST_CASE("group membership matches flat E-equality") {
    // membership of pi in <gens> is the same as f(c1..cn) ~E f(shuffled)
    test::Rng rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        int degree = 2 + static_cast<int>(rng.below(5));  // up to 6
        Signature sig;
        SymbolId f = sig.add_symbol("f", degree);
        std::vector<Permutation> gens;
        for (size_t i = 0; i < 1 + rng.below(2); ++i)
            gens.push_back(test::random_perm_generator(rng, degree));
        for (const Permutation& g : gens) sig.add_perm_generator(f, g);
        PermTheory th = decompose(sig);
        PermGroup grp = PermGroup::generate(degree, gens, 1'000'000);

        Permutation pi = test::random_perm_generator(rng, degree);
        std::vector<TermPtr> args;
        for (int i = 0; i < degree; ++i) args.push_back(Term::kconst(i));
        TermPtr lhs = Term::app(f, args);
        TermPtr rhs = Term::app(f, pi.act(args));
        CHECK(grp.contains(pi) == ground_eq_mod_e(lhs, rhs, th));
    }
}

TEST_SUITE_END();
