// E-equality modulo permutation equations: the per-symbol theory
// decomposition Eq(f), the flat-term equality test, and bottom-up canonical
// forms for arbitrary ground terms.

#pragma once

#include <unordered_map>

#include "permcc/perm.hpp"
#include "permcc/term.hpp"

namespace permcc {

struct PermTheory {
    // One group <Pi[Eq(f)]> per permutation symbol; symbols absent from the
    // map are uninterpreted w.r.t. E.
    std::unordered_map<SymbolId, PermGroup> groups;

    bool is_perm_symbol(SymbolId f) const { return groups.count(f) != 0; }

    const PermGroup* group_for(SymbolId f) const {
        auto it = groups.find(f);
        return it == groups.end() ? nullptr : &it->second;
    }
};

// Generates the group of each declared permutation symbol. Also verifies
// that an interpreted symbol carrying permutation equations is commutative
// (its group contains the transposition (1 2)).
PermTheory decompose(const Signature& sig, size_t group_cap = 1'000'000);

// The three-step flat equality test: same head, syntactic equality for
// uninterpreted heads, orbit equality (argument multisets + minimal image)
// for permutation heads. Both inputs must have depth <= 1.
bool flat_eq_test(const TermPtr& s, const TermPtr& t, const PermTheory& th);

// Children canonicalized recursively; at permutation heads the child tuple is
// replaced by its orbit-minimal image. canonical_term(s) == canonical_term(t)
// iff s and t are E-equal.
TermPtr canonical_term(const TermPtr& t, const PermTheory& th);

bool ground_eq_mod_e(const TermPtr& s, const TermPtr& t, const PermTheory& th);

}  // namespace permcc
