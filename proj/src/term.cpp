#include "permcc/term.hpp"

#include <algorithm>

namespace permcc {

const char* btag_name(BTag t) {
    switch (t) {
        case BTag::I: return "I";
        case BTag::N: return "N";
        case BTag::U: return "U";
        case BTag::IU: return "IU";
        case BTag::NU: return "NU";
    }
    return "?";
}

std::optional<BTag> btag_from_name(const std::string& s) {
    if (s == "I") return BTag::I;
    if (s == "N") return BTag::N;
    if (s == "U") return BTag::U;
    if (s == "IU") return BTag::IU;
    if (s == "NU") return BTag::NU;
    return std::nullopt;
}

SymbolId Signature::add_symbol(const std::string& name, int arity) {
    if (by_name_.count(name))
        fail(Errc::InvalidSignature, "symbol '" + name + "' declared twice");
    if (arity < 0) fail(Errc::InvalidSignature, "negative arity for '" + name + "'");
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{name, arity});
    by_name_.emplace(name, id);
    return id;
}

std::optional<SymbolId> Signature::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

SymbolId Signature::require(const std::string& name) const {
    auto id = find(name);
    if (!id) fail(Errc::UnknownSymbol, "symbol '" + name + "' is not declared");
    return *id;
}

const Symbol& Signature::symbol(SymbolId id) const {
    if (!has(id)) fail(Errc::UnknownSymbol, "symbol id " + std::to_string(id) + " out of range");
    return symbols_[static_cast<size_t>(id)];
}

void Signature::add_perm_generator(SymbolId sym, const Permutation& p) {
    const Symbol& s = symbol(sym);
    if (p.degree() != s.arity)
        fail(Errc::DegreeMismatch, "permutation degree " + std::to_string(p.degree()) +
                                       " does not match arity of '" + s.name + "' (" +
                                       std::to_string(s.arity) + ")");
    perm_gens_[sym].push_back(p);
}

const std::vector<Permutation>* Signature::perm_generators(SymbolId sym) const {
    auto it = perm_gens_.find(sym);
    if (it == perm_gens_.end()) return nullptr;
    return &it->second;
}

void Signature::set_b_theory(const BTheory& b) {
    if (b_theory_) fail(Errc::InvalidSignature, "at most one interpreted theory per problem");
    b_theory_ = b;
}

void Signature::validate() const {
    for (const auto& [sym, gens] : perm_gens_) {
        const Symbol& s = symbol(sym);
        for (const auto& g : gens)
            if (g.degree() != s.arity)
                fail(Errc::DegreeMismatch, "permutation generator degree mismatch for '" + s.name +
                                               "'");
    }
    if (b_theory_) {
        const Symbol& g = symbol(b_theory_->symbol);
        if (g.arity != 2)
            fail(Errc::InvalidSignature, "interpreted symbol '" + g.name + "' must be binary");
        if (btag_needs_zero(b_theory_->tag)) {
            if (!b_theory_->zero)
                fail(Errc::InvalidSignature,
                     std::string("theory ") + btag_name(b_theory_->tag) + " requires a zero symbol");
            const Symbol& z = symbol(*b_theory_->zero);
            if (z.arity != 0)
                fail(Errc::InvalidSignature, "zero symbol '" + z.name + "' must be 0-ary");
        } else if (b_theory_->zero) {
            fail(Errc::InvalidSignature,
                 std::string("theory ") + btag_name(b_theory_->tag) + " does not take a zero symbol");
        }
    }
}

namespace {

size_t mix(size_t h, size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

TermPtr Term::app(SymbolId head, std::vector<TermPtr> children) {
    auto t = std::shared_ptr<Term>(new Term());
    t->head_ = head;
    t->children_ = std::move(children);
    int d = 0;
    size_t n = 1;
    size_t h = mix(0x517cc1b727220a95ull, static_cast<size_t>(head) + 1);
    for (const auto& c : t->children_) {
        d = std::max(d, c->depth() + 1);
        n += c->node_count();
        h = mix(h, c->hash());
    }
    t->depth_ = d;
    t->nodes_ = n;
    t->hash_ = h;
    return t;
}

TermPtr Term::kconst(int index) {
    auto t = std::shared_ptr<Term>(new Term());
    t->head_ = -1;
    t->kindex_ = index;
    t->depth_ = 0;
    t->nodes_ = 1;
    t->hash_ = mix(0x2545f4914f6cdd1dull, static_cast<size_t>(index) + 1);
    return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash() != b->hash()) return false;
    if (a->is_kconst() != b->is_kconst()) return false;
    if (a->is_kconst()) return a->kindex() == b->kindex();
    if (a->head() != b->head()) return false;
    if (a->children().size() != b->children().size()) return false;
    for (size_t i = 0; i < a->children().size(); ++i)
        if (!term_equal(a->children()[i], b->children()[i])) return false;
    return true;
}

int term_compare(const TermPtr& a, const TermPtr& b) {
    if (a->is_kconst() != b->is_kconst()) return a->is_kconst() ? -1 : 1;
    if (a->is_kconst()) {
        if (a->kindex() != b->kindex()) return a->kindex() < b->kindex() ? -1 : 1;
        return 0;
    }
    if (a->head() != b->head()) return a->head() < b->head() ? -1 : 1;
    size_t n = std::min(a->children().size(), b->children().size());
    for (size_t i = 0; i < n; ++i) {
        int c = term_compare(a->children()[i], b->children()[i]);
        if (c != 0) return c;
    }
    if (a->children().size() != b->children().size())
        return a->children().size() < b->children().size() ? -1 : 1;
    return 0;
}

namespace {

void validate_rec(const TermPtr& t, const Signature& sig, Position& path) {
    if (t->is_kconst()) return;
    if (!sig.has(t->head()))
        fail(Errc::UnknownSymbol, "undeclared symbol at position " + position_to_string(path));
    const Symbol& s = sig.symbol(t->head());
    if (static_cast<int>(t->children().size()) != s.arity)
        fail(Errc::ArityMismatch, "'" + s.name + "' expects " + std::to_string(s.arity) +
                                      " arguments, got " + std::to_string(t->children().size()) +
                                      " at position " + position_to_string(path));
    for (size_t i = 0; i < t->children().size(); ++i) {
        path.push_back(static_cast<int>(i) + 1);
        validate_rec(t->children()[i], sig, path);
        path.pop_back();
    }
}

}  // namespace

void validate(const TermPtr& t, const Signature& sig) {
    Position path;
    validate_rec(t, sig, path);
}

TermPtr subterm_at(const TermPtr& t, const Position& p) {
    TermPtr cur = t;
    for (size_t k = 0; k < p.size(); ++k) {
        int i = p[k];
        if (cur->is_kconst() || i < 1 || static_cast<size_t>(i) > cur->children().size())
            fail(Errc::InvalidPosition, "no subterm at position " + position_to_string(p));
        cur = cur->children()[static_cast<size_t>(i - 1)];
    }
    return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& u) {
    if (p.empty()) return u;
    int i = p.front();
    if (t->is_kconst() || i < 1 || static_cast<size_t>(i) > t->children().size())
        fail(Errc::InvalidPosition, "no subterm at position " + position_to_string(p));
    std::vector<TermPtr> children = t->children();
    Position rest(p.begin() + 1, p.end());
    children[static_cast<size_t>(i - 1)] =
        replace_at(children[static_cast<size_t>(i - 1)], rest, u);
    return Term::app(t->head(), std::move(children));
}

std::string to_string(const TermPtr& t, const Signature& sig) {
    if (t->is_kconst()) return "c" + std::to_string(t->kindex());
    std::string out = sig.symbol(t->head()).name;
    if (!t->children().empty()) {
        out += "(";
        for (size_t i = 0; i < t->children().size(); ++i) {
            if (i) out += ",";
            out += to_string(t->children()[i], sig);
        }
        out += ")";
    }
    return out;
}

std::string position_to_string(const Position& p) {
    if (p.empty()) return "root";
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ".";
        out += std::to_string(p[i]);
    }
    return out;
}

}  // namespace permcc
