// Normalization of arbitrary ground terms with respect to the completed
// system R union B modulo E, and the word-problem decision built on it.

#pragma once

#include <unordered_map>

#include "permcc/engine.hpp"
#include "permcc/etheory.hpp"

namespace permcc {

class ClosureSystem {
  public:
    // Takes the final engine state; requires P empty and the C-map idempotent.
    ClosureSystem(const EngineResult& result, const Signature& sig, const PermTheory& th);

    // Innermost R union B, E normal form. Irreducible terms return themselves.
    TermPtr normalize(const TermPtr& t) const;

    // s and t over F are equal under the input equations modulo E and B iff
    // their normal forms are E-equal.
    bool decide_word(const TermPtr& s, const TermPtr& t) const;

    int num_consts() const { return num_consts_; }
    int cnorm(int kconst) const;  // C-normal form of a constant
    const std::vector<Rule>& drules() const { return drules_; }
    const std::vector<std::pair<int, int>>& crules() const { return crules_; }

    const Signature& signature() const { return sig_; }
    const PermTheory& theory() const { return th_; }

  private:
    using Key = std::vector<int>;
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = 1469598103934665603ull;
            for (int x : k) {
                h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    Key make_key(SymbolId head, const std::vector<int>& args) const;
    TermPtr normalize_node(SymbolId head, std::vector<TermPtr> children, size_t& budget) const;

    const Signature& sig_;
    const PermTheory& th_;
    std::optional<BTheory> b_;
    int num_consts_ = 0;
    std::vector<int> cmap_;
    std::vector<Rule> drules_;
    std::vector<std::pair<int, int>> crules_;
    std::unordered_map<Key, int, KeyHash> dindex_;
    TermPtr zero_nf_;  // normal form of the zero symbol, when one is declared
};

}  // namespace permcc
