// Ground terms over a declared signature F plus an indexed namespace K of
// fresh constants. Terms are immutable values with structural sharing.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "permcc/errors.hpp"
#include "permcc/perm.hpp"

namespace permcc {

using SymbolId = int32_t;

struct Symbol {
    std::string name;
    int arity = 0;
};

enum class BTag { I, N, U, IU, NU };

const char* btag_name(BTag t);
std::optional<BTag> btag_from_name(const std::string& s);

inline bool btag_has_i(BTag t) { return t == BTag::I || t == BTag::IU; }
inline bool btag_has_n(BTag t) { return t == BTag::N || t == BTag::NU; }
inline bool btag_has_u(BTag t) { return t == BTag::U || t == BTag::IU || t == BTag::NU; }
inline bool btag_needs_zero(BTag t) { return btag_has_n(t) || btag_has_u(t); }

// One interpreted binary symbol per problem; `zero` is its 0-ary unit/nil
// symbol when the tag involves N or U.
struct BTheory {
    SymbolId symbol = -1;
    BTag tag = BTag::I;
    std::optional<SymbolId> zero;
};

class Signature {
  public:
    SymbolId add_symbol(const std::string& name, int arity);

    std::optional<SymbolId> find(const std::string& name) const;
    SymbolId require(const std::string& name) const;

    const Symbol& symbol(SymbolId id) const;
    bool has(SymbolId id) const { return id >= 0 && static_cast<size_t>(id) < symbols_.size(); }
    size_t size() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    void add_perm_generator(SymbolId sym, const Permutation& p);
    const std::vector<Permutation>* perm_generators(SymbolId sym) const;
    bool is_perm_symbol(SymbolId sym) const { return perm_gens_.count(sym) != 0; }
    const std::unordered_map<SymbolId, std::vector<Permutation>>& all_perm_generators() const {
        return perm_gens_;
    }

    void set_b_theory(const BTheory& b);
    const std::optional<BTheory>& b_theory() const { return b_theory_; }

    // Static well-formedness checks (group-level checks live in decompose).
    void validate() const;

  private:
    std::vector<Symbol> symbols_;
    std::unordered_map<std::string, SymbolId> by_name_;
    std::unordered_map<SymbolId, std::vector<Permutation>> perm_gens_;
    std::optional<BTheory> b_theory_;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Either an application of a signature symbol (constants of F are 0-ary
// applications) or an indexed K-constant.
class Term {
  public:
    static TermPtr app(SymbolId head, std::vector<TermPtr> children);
    static TermPtr constant(SymbolId head) { return app(head, {}); }
    static TermPtr kconst(int index);

    bool is_kconst() const { return head_ < 0; }
    int kindex() const { return kindex_; }
    SymbolId head() const { return head_; }
    const std::vector<TermPtr>& children() const { return children_; }

    int depth() const { return depth_; }
    size_t hash() const { return hash_; }
    size_t node_count() const { return nodes_; }

  private:
    Term() = default;

    SymbolId head_ = -1;  // -1 marks a K-constant
    int kindex_ = -1;
    std::vector<TermPtr> children_;
    int depth_ = 0;
    size_t nodes_ = 1;
    size_t hash_ = 0;
};

struct Equation {
    TermPtr lhs;
    TermPtr rhs;
};

using Position = std::vector<int>;  // 1-based child indices; empty = root

bool term_equal(const TermPtr& a, const TermPtr& b);

// Total order: K-constants first (by index), then applications by head rank,
// then lexicographically by children.
int term_compare(const TermPtr& a, const TermPtr& b);

inline int depth(const TermPtr& t) { return t->depth(); }
inline bool is_flat(const TermPtr& t) { return t->depth() <= 1; }

// Throws UnknownSymbol / ArityMismatch naming the offending node path.
void validate(const TermPtr& t, const Signature& sig);

TermPtr subterm_at(const TermPtr& t, const Position& p);
TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& u);

std::string to_string(const TermPtr& t, const Signature& sig);
std::string position_to_string(const Position& p);

struct TermPtrHash {
    size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermPtrEq {
    bool operator()(const TermPtr& a, const TermPtr& b) const { return term_equal(a, b); }
};

}  // namespace permcc
