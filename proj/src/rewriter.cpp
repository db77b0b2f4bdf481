#include "permcc/rewriter.hpp"

#include <stdexcept>

namespace permcc {

ClosureSystem::ClosureSystem(const EngineResult& result, const Signature& sig,
                             const PermTheory& th)
    : sig_(sig), th_(th), b_(sig.b_theory()), num_consts_(result.num_consts) {
    cmap_.assign(static_cast<size_t>(num_consts_), -1);
    for (const auto& [lhs, rhs] : result.final_crules()) cmap_[static_cast<size_t>(lhs)] = rhs;
    for (const auto& [lhs, rhs] : result.final_crules())
        if (cmap_[static_cast<size_t>(rhs)] != -1)
            throw std::logic_error("C-map is not fully composed");
    drules_ = result.final_drules();
    crules_ = result.final_crules();
    for (const Rule& r : drules_) {
        if (cmap_[static_cast<size_t>(r.rhs)] != -1)
            throw std::logic_error("D-rule rhs is not C-normal");
        dindex_.emplace(make_key(r.head, r.args), r.rhs);
    }
    if (b_ && b_->zero) {
        Key zkey = make_key(*b_->zero, {});
        auto it = dindex_.find(zkey);
        zero_nf_ = it == dindex_.end() ? Term::constant(*b_->zero) : Term::kconst(it->second);
    }
}

ClosureSystem::Key ClosureSystem::make_key(SymbolId head, const std::vector<int>& args) const {
    Key key;
    key.reserve(args.size() + 1);
    key.push_back(static_cast<int>(head));
    if (const PermGroup* grp = th_.group_for(head)) {
        std::vector<int> canon = grp->min_image_ints(args);
        key.insert(key.end(), canon.begin(), canon.end());
    } else {
        key.insert(key.end(), args.begin(), args.end());
    }
    return key;
}

int ClosureSystem::cnorm(int kconst) const {
    int c = kconst;
    if (cmap_[static_cast<size_t>(c)] != -1) c = cmap_[static_cast<size_t>(c)];
    return c;
}

TermPtr ClosureSystem::normalize_node(SymbolId head, std::vector<TermPtr> children,
                                      size_t& budget) const {
    TermPtr node = Term::app(head, std::move(children));
    while (true) {
        if (budget-- == 0) throw std::logic_error("normalization step counter exhausted");
        // D-step: all arguments are constants and the orbit key is indexed
        if (!node->is_kconst()) {
            bool all_k = true;
            std::vector<int> args;
            args.reserve(node->children().size());
            for (const auto& c : node->children()) {
                if (!c->is_kconst()) {
                    all_k = false;
                    break;
                }
                args.push_back(c->kindex());
            }
            if (all_k) {
                auto it = dindex_.find(make_key(node->head(), args));
                if (it != dindex_.end()) {
                    node = Term::kconst(cnorm(it->second));
                    continue;
                }
            }
        }
        // B-step modulo E at this node
        if (!node->is_kconst() && b_ && node->head() == b_->symbol) {
            const TermPtr& u = node->children()[0];
            const TermPtr& v = node->children()[1];
            if ((btag_has_i(b_->tag) || btag_has_n(b_->tag)) && ground_eq_mod_e(u, v, th_)) {
                node = btag_has_i(b_->tag) ? u : zero_nf_;
                continue;
            }
            if (btag_has_u(b_->tag) && zero_nf_) {
                if (ground_eq_mod_e(v, zero_nf_, th_)) {
                    node = u;
                    continue;
                }
                if (ground_eq_mod_e(u, zero_nf_, th_)) {
                    node = v;
                    continue;
                }
            }
        }
        return node;
    }
}

TermPtr ClosureSystem::normalize(const TermPtr& t) const {
    // step bound: every node is visited once and each at-node loop strictly
    // shrinks the term or rewrites into the (idempotent) C-map
    size_t budget = 4 * t->node_count() + 4 * static_cast<size_t>(num_consts_ + 1) + 16;
    struct Walker {
        const ClosureSystem& cs;
        size_t& budget;
        TermPtr walk(const TermPtr& u) {
            if (u->is_kconst()) return Term::kconst(cs.cnorm(u->kindex()));
            std::vector<TermPtr> children;
            children.reserve(u->children().size());
            for (const auto& c : u->children()) children.push_back(walk(c));
            return cs.normalize_node(u->head(), std::move(children), budget);
        }
    };
    Walker w{*this, budget};
    return w.walk(t);
}

bool ClosureSystem::decide_word(const TermPtr& s, const TermPtr& t) const {
    validate(s, sig_);
    validate(t, sig_);
    return ground_eq_mod_e(normalize(s), normalize(t), th_);
}

}  // namespace permcc
