#include "permcc/etheory.hpp"

#include <algorithm>

namespace permcc {

PermTheory decompose(const Signature& sig, size_t group_cap) {
    sig.validate();
    PermTheory th;
    for (const auto& [sym, gens] : sig.all_perm_generators()) {
        int degree = sig.symbol(sym).arity;
        th.groups.emplace(sym, PermGroup::generate(degree, gens, group_cap));
    }
    if (sig.b_theory()) {
        SymbolId g = sig.b_theory()->symbol;
        if (const PermGroup* grp = th.group_for(g)) {
            // an interpreted permutation symbol must be commutative
            if (!grp->contains(Permutation::from_cycles(2, {{1, 2}})))
                fail(Errc::InvalidSignature,
                     "interpreted symbol '" + sig.symbol(g).name +
                         "' has permutation equations but is not commutative");
        }
    }
    return th;
}

bool flat_eq_test(const TermPtr& s, const TermPtr& t, const PermTheory& th) {
    if (!is_flat(s) || !is_flat(t))
        fail(Errc::NotFlat, "flat_eq_test requires terms of depth <= 1");
    // step 1: same head
    if (s->is_kconst() || t->is_kconst()) return term_equal(s, t);
    if (s->head() != t->head()) return false;
    // step 2: uninterpreted heads compare syntactically
    const PermGroup* grp = th.group_for(s->head());
    if (!grp) return term_equal(s, t);
    // step 3: multiset fast path, then orbit equality via minimal images
    std::vector<TermPtr> as = s->children();
    std::vector<TermPtr> bs = t->children();
    auto lt = [](const TermPtr& a, const TermPtr& b) { return term_compare(a, b) < 0; };
    std::vector<TermPtr> sa = as, sb = bs;
    std::sort(sa.begin(), sa.end(), lt);
    std::sort(sb.begin(), sb.end(), lt);
    for (size_t i = 0; i < sa.size(); ++i)
        if (!term_equal(sa[i], sb[i])) return false;
    std::vector<TermPtr> ma = grp->min_image(as, lt);
    std::vector<TermPtr> mb = grp->min_image(bs, lt);
    for (size_t i = 0; i < ma.size(); ++i)
        if (!term_equal(ma[i], mb[i])) return false;
    return true;
}

TermPtr canonical_term(const TermPtr& t, const PermTheory& th) {
    if (t->is_kconst()) return t;
    std::vector<TermPtr> children;
    children.reserve(t->children().size());
    bool changed = false;
    for (const auto& c : t->children()) {
        TermPtr cc = canonical_term(c, th);
        changed = changed || cc.get() != c.get();
        children.push_back(std::move(cc));
    }
    if (const PermGroup* grp = th.group_for(t->head())) {
        auto lt = [](const TermPtr& a, const TermPtr& b) { return term_compare(a, b) < 0; };
        std::vector<TermPtr> minimal = grp->min_image(children, lt);
        for (size_t i = 0; i < minimal.size(); ++i) {
            if (minimal[i].get() != children[i].get()) {
                changed = true;
                break;
            }
        }
        children = std::move(minimal);
    }
    if (!changed) return t;
    return Term::app(t->head(), std::move(children));
}

bool ground_eq_mod_e(const TermPtr& s, const TermPtr& t, const PermTheory& th) {
    return term_equal(canonical_term(s, th), canonical_term(t, th));
}

}  // namespace permcc
