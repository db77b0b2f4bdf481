// The completion engine: states (K, P, R), the eight inference rules, and the
// deterministic fair strategy that flattens the input equations eagerly and
// then saturates with the priority
//   SIMPLIFY > DELETE > COLLAPSE > COMPOSE > REWRITE > DEDUCE > ORIENT > EXTEND.

#pragma once

#include <array>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "permcc/etheory.hpp"
#include "permcc/term.hpp"

namespace permcc {

enum class StepKind { Extend, Simplify, Rewrite, Orient, Deduce, Delete, Compose, Collapse };

const char* step_kind_name(StepKind k);

// Rules are immutable records; COMPOSE and COLLAPSE retire a rule and create
// its replacement under a fresh id, so trace events can reference contents by
// id alone.
struct Rule {
    int id = -1;
    bool is_c = false;
    SymbolId head = -1;        // D-rules: f(args) -> rhs, arity may be 0
    std::vector<int> args;     // D-rules: K-constant indices
    int lhs_const = -1;        // C-rules: lhs -> rhs with lhs index < rhs index
    int rhs = -1;
    std::vector<int> key;      // D-rules: [head, orbit-minimal args]
};

struct EqRec {
    int id = -1;
    TermPtr lhs;
    TermPtr rhs;
    int orig = -1;  // index of the input equation this descends from
};

struct TraceEvent {
    StepKind kind;
    std::vector<int> consumed_rules;  // removed from R
    std::vector<int> produced_rules;  // added to R
    std::vector<int> consumed_eqs;    // removed from P
    std::vector<int> produced_eqs;    // added to P
    std::vector<int> via_rules;       // applied but left in R
    std::string detail;
};

// EXTEND provenance: the flat term f(args) the constant abbreviates.
struct KConstInfo {
    SymbolId head = -1;
    std::vector<int> args;
};

struct EngineCaps {
    size_t step_cap = 0;   // 0 = derive from input size
    size_t const_cap = 0;  // 0 = derive from input size
};

struct EngineResult {
    int num_consts = 0;
    std::vector<KConstInfo> provenance;
    std::vector<Rule> rules;
    std::vector<char> rule_alive;
    std::vector<EqRec> eqs;
    std::vector<char> eq_alive;
    std::vector<TraceEvent> trace;
    size_t steps = 0;

    std::vector<Rule> final_drules() const;                 // sorted by (rhs, id)
    std::vector<std::pair<int, int>> final_crules() const;  // sorted by lhs
};

class Engine {
  public:
    Engine(std::vector<Equation> p0, const Signature& sig, const PermTheory& th,
           EngineCaps caps = {});

    // Phase 1: eager EXTEND/SIMPLIFY until every equation is between
    // K-constants. Allocation runs left-to-right, innermost-first per
    // equation, with the 0-ary symbols occurring in the input allocated up
    // front in declaration order. Left sides abbreviate each compound
    // occurrence with a fresh constant; right sides are simplified against
    // the rules collected so far before extending.
    void flatten();

    // Applies one prioritized inference; false when no rule is enabled.
    bool apply_next();

    void complete();
    EngineResult take_result();

    // Verified single transitions. Each throws on an unmet side condition.
    int extend_at(int eq_id, const Position& pos);             // NotFlatOverK
    int simplify(int eq_id, int rule_id);                      // NoOccurrence
    int orient(int eq_id);                                     // NotOrientable
    int deduce(int rule_a, int rule_b);                        // NotEEqual
    void delete_eq(int eq_id);                                 // NotEEqual
    int compose_rule(int rule_id);                             // NoMatch (no chain)
    int collapse_rule(int rule_id);                            // NoMatch (no reducible arg)
    int rewrite_b(int rule_id);                                // NoMatch

    // State inspection.
    int num_consts() const { return n_consts_; }
    const std::vector<Rule>& rules() const { return rules_; }
    bool rule_is_alive(int id) const { return rule_alive_[static_cast<size_t>(id)] != 0; }
    const std::vector<EqRec>& eqs() const { return eqs_; }
    bool eq_is_alive(int id) const { return eq_alive_[static_cast<size_t>(id)] != 0; }
    size_t alive_eq_count() const;
    const std::vector<TraceEvent>& trace() const { return trace_; }
    std::vector<Rule> alive_drules() const;
    std::vector<std::pair<int, int>> alive_crules() const;
    std::optional<int> zero_repr() const;
    std::string rule_to_string(const Rule& r) const;

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

    int new_const(KConstInfo info);
    Key make_key(SymbolId head, const std::vector<int>& args) const;
    int find_syntactic_rule(SymbolId head, const std::vector<int>& args) const;
    int add_d_rule(SymbolId head, std::vector<int> args, int rhs, bool absorb);
    int add_c_rule(int lhs, int rhs);
    void kill_rule(int id);
    int push_eq(TermPtr l, TermPtr r, int orig);
    void kill_eq(int id);
    void classify_eq(int id);
    void enqueue_g_rules();
    TermPtr rule_lhs_term(const Rule& r) const;
    void record(TraceEvent ev);
    void count_step();
    bool occurs(const TermPtr& hay, const TermPtr& needle) const;
    TermPtr replace_all(const TermPtr& hay, const TermPtr& needle, const TermPtr& repl,
                        size_t& count) const;
    std::optional<Position> find_extend_pos(const TermPtr& t) const;
    std::string eq_to_string(const EqRec& e) const;

    bool try_simplify();
    bool try_delete();
    bool try_collapse();
    bool try_compose();
    bool try_rewrite();
    bool try_deduce();
    int try_orient();
    bool try_extend_zero();

    const Signature& sig_;
    const PermTheory& th_;
    std::optional<BTheory> b_;
    EngineCaps caps_;
    size_t step_cap_ = 0;
    size_t const_cap_ = 0;
    size_t input_size_ = 0;
    int phase_ = 1;

    int n_consts_ = 0;
    std::vector<KConstInfo> prov_;
    std::vector<Rule> rules_;
    std::vector<char> rule_alive_;
    std::vector<EqRec> eqs_;
    std::vector<char> eq_alive_;
    size_t n_alive_eqs_ = 0;

    std::vector<int> cmap_;      // per constant: C-rule rhs or -1
    std::vector<int> crule_id_;  // per constant: alive C-rule id or -1
    std::vector<std::vector<int>> arg_occ_;  // constant -> D-rule ids (stale-tolerant)
    std::vector<std::vector<int>> rhs_occ_;  // constant -> rule ids with that rhs
    std::vector<std::vector<int>> eq_occ_;   // constant -> eq ids
    std::unordered_map<Key, std::vector<int>, KeyHash> key_index_;

    std::set<int> wl_simplify_, wl_delete_, wl_collapse_, wl_compose_, wl_rewrite_, wl_orient_;
    std::set<std::array<int, 4>> wl_deduce_;
    std::deque<int> wl_nonflat_;
    std::vector<int> g_rules_;
    int zero_rule_id_ = -1;

    std::vector<TraceEvent> trace_;
    size_t steps_ = 0;
};

// Runs the full deterministic strategy; the result satisfies P = empty and no
// inference rule enabled.
EngineResult run_fair_mu(std::vector<Equation> p0, const Signature& sig, const PermTheory& th,
                         EngineCaps caps = {});

}  // namespace permcc
