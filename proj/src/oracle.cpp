#include "permcc/oracle.hpp"

#include <algorithm>
#include <deque>

namespace permcc {

std::vector<std::vector<int>> perm_closure(int degree,
                                           const std::vector<std::vector<int>>& gens_zero_based,
                                           size_t cap) {
    std::vector<std::vector<int>> elems;
    std::vector<int> id(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) id[static_cast<size_t>(i)] = i;
    elems.push_back(id);
    // product-set fixpoint: keep multiplying the set by the generators
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = elems.size();
        for (size_t i = 0; i < n; ++i) {
            for (const auto& g : gens_zero_based) {
                std::vector<int> prod(static_cast<size_t>(degree));
                for (int k = 0; k < degree; ++k)
                    prod[static_cast<size_t>(k)] = g[static_cast<size_t>(elems[i][static_cast<size_t>(k)])];
                if (std::find(elems.begin(), elems.end(), prod) == elems.end()) {
                    elems.push_back(prod);
                    grew = true;
                    if (elems.size() > cap)
                        fail(Errc::GroupTooLarge, "oracle permutation closure exceeded cap");
                }
            }
        }
    }
    return elems;
}

OracleEngine::OracleEngine(const std::vector<Equation>& p, const std::vector<TermPtr>& queries,
                           const Signature& sig, const OracleCaps& caps)
    : sig_(sig), caps_(caps) {
    for (const auto& [sym, gens] : sig.all_perm_generators()) {
        std::vector<std::vector<int>> zb;
        for (const Permutation& g : gens) {
            std::vector<int> img;
            for (int i = 1; i <= g.degree(); ++i) img.push_back(g.image(i) - 1);
            zb.push_back(std::move(img));
        }
        closures_.emplace(sym, perm_closure(sig.symbol(sym).arity, zb, caps_.perm_cap));
    }

    for (const Equation& e : p) {
        add_term(e.lhs);
        add_term(e.rhs);
    }
    for (const TermPtr& q : queries) add_term(q);
    if (sig.b_theory() && sig.b_theory()->zero)
        zero_idx_ = add_term(Term::constant(*sig.b_theory()->zero));

    parent_.resize(terms_.size());
    for (size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
    run_fixpoint(p);
}

int OracleEngine::add_term(const TermPtr& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    if (terms_.size() >= caps_.universe_cap)
        fail(Errc::UniverseTooLarge,
             "oracle universe exceeded cap of " + std::to_string(caps_.universe_cap));
    int idx = static_cast<int>(terms_.size());
    terms_.push_back(t);
    index_.emplace(t, idx);
    for (const auto& c : t->children()) add_term(c);
    // orbit closure at this node
    auto cl = t->is_kconst() ? closures_.end() : closures_.find(t->head());
    if (cl != closures_.end()) {
        for (const auto& pi : cl->second) {
            std::vector<TermPtr> shuffled(t->children().size());
            for (size_t i = 0; i < shuffled.size(); ++i)
                shuffled[i] = t->children()[static_cast<size_t>(pi[i])];
            add_term(Term::app(t->head(), std::move(shuffled)));
        }
    }
    return idx;
}

int OracleEngine::find(int x) const {
    while (parent_[static_cast<size_t>(x)] != x) {
        parent_[static_cast<size_t>(x)] =
            parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
        x = parent_[static_cast<size_t>(x)];
    }
    return x;
}

bool OracleEngine::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[static_cast<size_t>(a)] = b;
    return true;
}

void OracleEngine::run_fixpoint(const std::vector<Equation>& p) {
    // seeds: the input equations and the term-level orbit pairs
    for (const Equation& e : p) unite(index_.at(e.lhs), index_.at(e.rhs));
    for (size_t i = 0; i < terms_.size(); ++i) {
        const TermPtr& t = terms_[i];
        if (t->is_kconst()) continue;
        auto cl = closures_.find(t->head());
        if (cl == closures_.end()) continue;
        for (const auto& pi : cl->second) {
            std::vector<TermPtr> shuffled(t->children().size());
            for (size_t k = 0; k < shuffled.size(); ++k)
                shuffled[k] = t->children()[static_cast<size_t>(pi[k])];
            unite(static_cast<int>(i), index_.at(Term::app(t->head(), std::move(shuffled))));
        }
    }

    struct VecHash {
        size_t operator()(const std::vector<int>& v) const {
            size_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    const auto& b = sig_.b_theory();
    bool changed = true;
    while (changed) {
        changed = false;
        // monotonicity: same head, classwise-equal children
        std::unordered_map<std::vector<int>, int, VecHash> buckets;
        for (size_t i = 0; i < terms_.size(); ++i) {
            const TermPtr& t = terms_[i];
            if (t->is_kconst()) continue;
            std::vector<int> sig_vec;
            sig_vec.reserve(t->children().size() + 1);
            sig_vec.push_back(static_cast<int>(t->head()));
            for (const auto& c : t->children()) sig_vec.push_back(find(index_.at(c)));
            auto [it, fresh] = buckets.emplace(std::move(sig_vec), static_cast<int>(i));
            if (!fresh) changed = unite(it->second, static_cast<int>(i)) || changed;
        }
        // interpreted-rule instances over the universe
        if (b) {
            for (size_t i = 0; i < terms_.size(); ++i) {
                const TermPtr& t = terms_[i];
                if (t->is_kconst() || t->head() != b->symbol) continue;
                int cu = find(index_.at(t->children()[0]));
                int cv = find(index_.at(t->children()[1]));
                if (cu == cv && btag_has_i(b->tag))
                    changed = unite(static_cast<int>(i), cu) || changed;
                if (cu == cv && btag_has_n(b->tag))
                    changed = unite(static_cast<int>(i), zero_idx_) || changed;
                if (btag_has_u(b->tag) && zero_idx_ >= 0) {
                    int cz = find(zero_idx_);
                    if (cv == cz) changed = unite(static_cast<int>(i), cu) || changed;
                    if (cu == cz) changed = unite(static_cast<int>(i), cv) || changed;
                }
            }
        }
    }
}

bool OracleEngine::in_universe(const TermPtr& t) const { return index_.count(t) != 0; }

int OracleEngine::class_of(const TermPtr& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) fail(Errc::NoOccurrence, "term is not in the oracle universe");
    return find(it->second);
}

bool OracleEngine::decide(const TermPtr& s, const TermPtr& t) const {
    return class_of(s) == class_of(t);
}

bool oracle_decide(const TermPtr& s, const TermPtr& t, const std::vector<Equation>& p,
                   const Signature& sig, const OracleCaps& caps) {
    OracleEngine eng(p, {s, t}, sig, caps);
    return eng.decide(s, t);
}

}  // namespace permcc
