// Brute-force ground-truth decision of s ~ t under P, E and B on small
// instances. Shares no reasoning code with the canonical-form path: the
// permutation closure and orbit handling here are self-contained.

#pragma once

#include <vector>

#include "permcc/term.hpp"

namespace permcc {

struct OracleCaps {
    size_t universe_cap = 20'000;
    size_t perm_cap = 200'000;
};

// Fixpoint of {id} u (S . gens) as raw 0-based image vectors.
std::vector<std::vector<int>> perm_closure(int degree,
                                           const std::vector<std::vector<int>>& gens_zero_based,
                                           size_t cap);

class OracleEngine {
  public:
    // Builds the subterm-and-orbit-closed universe of the equation sides and
    // query terms, then runs the congruence fixpoint seeded with P, orbit
    // pairs, and interpreted-rule instances.
    OracleEngine(const std::vector<Equation>& p, const std::vector<TermPtr>& queries,
                 const Signature& sig, const OracleCaps& caps = {});

    bool decide(const TermPtr& s, const TermPtr& t) const;  // both must be in the universe
    bool in_universe(const TermPtr& t) const;
    size_t universe_size() const { return terms_.size(); }
    const std::vector<TermPtr>& universe() const { return terms_; }

    // Class id of a universe term (root of its union-find class).
    int class_of(const TermPtr& t) const;

  private:
    int add_term(const TermPtr& t);
    int find(int x) const;
    bool unite(int a, int b);
    void run_fixpoint(const std::vector<Equation>& p);

    const Signature& sig_;
    OracleCaps caps_;
    std::vector<TermPtr> terms_;
    std::unordered_map<TermPtr, int, TermPtrHash, TermPtrEq> index_;
    std::unordered_map<SymbolId, std::vector<std::vector<int>>> closures_;  // f -> group elements
    mutable std::vector<int> parent_;
    int zero_idx_ = -1;
};

// One-shot convenience used by tests and the CLI oracle command.
bool oracle_decide(const TermPtr& s, const TermPtr& t, const std::vector<Equation>& p,
                   const Signature& sig, const OracleCaps& caps = {});

}  // namespace permcc
