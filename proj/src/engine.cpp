#include "permcc/engine.hpp"

#include <algorithm>
#include <cassert>

namespace permcc {

const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Extend: return "EXTEND";
        case StepKind::Simplify: return "SIMPLIFY";
        case StepKind::Rewrite: return "REWRITE";
        case StepKind::Orient: return "ORIENT";
        case StepKind::Deduce: return "DEDUCE";
        case StepKind::Delete: return "DELETE";
        case StepKind::Compose: return "COMPOSE";
        case StepKind::Collapse: return "COLLAPSE";
    }
    return "?";
}

std::vector<Rule> EngineResult::final_drules() const {
    std::vector<Rule> out;
    for (const Rule& r : rules)
        if (rule_alive[static_cast<size_t>(r.id)] && !r.is_c) out.push_back(r);
    std::sort(out.begin(), out.end(), [](const Rule& a, const Rule& b) {
        return a.rhs != b.rhs ? a.rhs < b.rhs : a.id < b.id;
    });
    return out;
}

std::vector<std::pair<int, int>> EngineResult::final_crules() const {
    std::vector<std::pair<int, int>> out;
    for (const Rule& r : rules)
        if (rule_alive[static_cast<size_t>(r.id)] && r.is_c) out.emplace_back(r.lhs_const, r.rhs);
    std::sort(out.begin(), out.end());
    return out;
}

Engine::Engine(std::vector<Equation> p0, const Signature& sig, const PermTheory& th,
               EngineCaps caps)
    : sig_(sig), th_(th), b_(sig.b_theory()), caps_(caps) {
    for (const Equation& e : p0) {
        validate(e.lhs, sig_);
        validate(e.rhs, sig_);
        input_size_ += e.lhs->node_count() + e.rhs->node_count();
    }
    step_cap_ = caps_.step_cap ? caps_.step_cap
                               : std::max<size_t>(10'000, 20 * input_size_ * input_size_);
    const_cap_ = caps_.const_cap ? caps_.const_cap : input_size_ + 8;
    int orig = 0;
    for (Equation& e : p0) push_eq(e.lhs, e.rhs, orig++);
}

int Engine::new_const(KConstInfo info) {
    if (static_cast<size_t>(n_consts_) >= const_cap_)
        fail(Errc::ResourceCap, "constant budget of " + std::to_string(const_cap_) + " exceeded");
    int c = n_consts_++;
    prov_.push_back(std::move(info));
    cmap_.push_back(-1);
    crule_id_.push_back(-1);
    arg_occ_.emplace_back();
    rhs_occ_.emplace_back();
    eq_occ_.emplace_back();
    return c;
}

Engine::Key Engine::make_key(SymbolId head, const std::vector<int>& args) const {
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

int Engine::find_syntactic_rule(SymbolId head, const std::vector<int>& args) const {
    auto it = key_index_.find(make_key(head, args));
    if (it == key_index_.end()) return -1;
    int best = -1;
    for (int id : it->second) {
        const Rule& r = rules_[static_cast<size_t>(id)];
        if (rule_alive_[static_cast<size_t>(id)] && r.head == head && r.args == args)
            if (best < 0 || id < best) best = id;
    }
    return best;
}

int Engine::add_d_rule(SymbolId head, std::vector<int> args, int rhs, bool absorb) {
    Key key = make_key(head, args);
    auto& bucket = key_index_[key];
    if (absorb) {
        for (int other : bucket) {
            const Rule& o = rules_[static_cast<size_t>(other)];
            if (rule_alive_[static_cast<size_t>(other)] && o.rhs == rhs && o.args == args)
                return -1;
        }
    }
    int id = static_cast<int>(rules_.size());
    Rule r;
    r.id = id;
    r.is_c = false;
    r.head = head;
    r.args = std::move(args);
    r.rhs = rhs;
    r.key = key;
    rules_.push_back(std::move(r));
    rule_alive_.push_back(1);
    const Rule& self = rules_.back();
    for (int c : self.args) arg_occ_[static_cast<size_t>(c)].push_back(id);
    rhs_occ_[static_cast<size_t>(rhs)].push_back(id);
    for (int other : bucket) {
        if (rule_alive_[static_cast<size_t>(other)]) {
            const Rule& o = rules_[static_cast<size_t>(other)];
            int lo = std::min(o.rhs, self.rhs), hi = std::max(o.rhs, self.rhs);
            wl_deduce_.insert({lo, hi, std::min(other, id), std::max(other, id)});
        }
    }
    bucket.push_back(id);
    if (cmap_[static_cast<size_t>(rhs)] != -1) wl_compose_.insert(id);
    for (int c : self.args)
        if (cmap_[static_cast<size_t>(c)] != -1) {
            wl_collapse_.insert(id);
            break;
        }
    if (b_ && head == b_->symbol) {
        g_rules_.push_back(id);
        wl_rewrite_.insert(id);
    }
    if (b_ && b_->zero && head == *b_->zero) {
        zero_rule_id_ = id;
        enqueue_g_rules();
    }
    return id;
}

int Engine::add_c_rule(int lhs, int rhs) {
    int id = static_cast<int>(rules_.size());
    Rule r;
    r.id = id;
    r.is_c = true;
    r.lhs_const = lhs;
    r.rhs = rhs;
    rules_.push_back(std::move(r));
    rule_alive_.push_back(1);
    cmap_[static_cast<size_t>(lhs)] = rhs;
    crule_id_[static_cast<size_t>(lhs)] = id;
    rhs_occ_[static_cast<size_t>(rhs)].push_back(id);
    if (cmap_[static_cast<size_t>(rhs)] != -1) wl_compose_.insert(id);
    for (int eq : eq_occ_[static_cast<size_t>(lhs)])
        if (eq_alive_[static_cast<size_t>(eq)]) wl_simplify_.insert(eq);
    for (int rid : arg_occ_[static_cast<size_t>(lhs)])
        if (rule_alive_[static_cast<size_t>(rid)]) wl_collapse_.insert(rid);
    for (int rid : rhs_occ_[static_cast<size_t>(lhs)])
        if (rule_alive_[static_cast<size_t>(rid)]) wl_compose_.insert(rid);
    return id;
}

void Engine::kill_rule(int id) {
    rule_alive_[static_cast<size_t>(id)] = 0;
    const Rule& r = rules_[static_cast<size_t>(id)];
    if (r.is_c && crule_id_[static_cast<size_t>(r.lhs_const)] == id) {
        crule_id_[static_cast<size_t>(r.lhs_const)] = -1;
        cmap_[static_cast<size_t>(r.lhs_const)] = -1;
    }
    if (id == zero_rule_id_) zero_rule_id_ = -1;
}

int Engine::push_eq(TermPtr l, TermPtr r, int orig) {
    int id = static_cast<int>(eqs_.size());
    eqs_.push_back(EqRec{id, std::move(l), std::move(r), orig});
    eq_alive_.push_back(1);
    ++n_alive_eqs_;
    const EqRec& e = eqs_.back();
    if (e.lhs->is_kconst()) eq_occ_[static_cast<size_t>(e.lhs->kindex())].push_back(id);
    if (e.rhs->is_kconst()) eq_occ_[static_cast<size_t>(e.rhs->kindex())].push_back(id);
    if (phase_ == 2) classify_eq(id);
    return id;
}

void Engine::kill_eq(int id) {
    if (eq_alive_[static_cast<size_t>(id)]) {
        eq_alive_[static_cast<size_t>(id)] = 0;
        --n_alive_eqs_;
    }
}

void Engine::classify_eq(int id) {
    const EqRec& e = eqs_[static_cast<size_t>(id)];
    if (e.lhs->is_kconst() && e.rhs->is_kconst()) {
        int a = e.lhs->kindex(), b = e.rhs->kindex();
        if (a == b) {
            wl_delete_.insert(id);
        } else if (cmap_[static_cast<size_t>(a)] != -1 || cmap_[static_cast<size_t>(b)] != -1) {
            wl_simplify_.insert(id);
        } else {
            wl_orient_.insert(id);
        }
    } else {
        wl_nonflat_.push_back(id);
    }
}

void Engine::enqueue_g_rules() {
    for (int id : g_rules_)
        if (rule_alive_[static_cast<size_t>(id)]) wl_rewrite_.insert(id);
}

TermPtr Engine::rule_lhs_term(const Rule& r) const {
    if (r.is_c) return Term::kconst(r.lhs_const);
    std::vector<TermPtr> children;
    children.reserve(r.args.size());
    for (int c : r.args) children.push_back(Term::kconst(c));
    return Term::app(r.head, std::move(children));
}

void Engine::record(TraceEvent ev) { trace_.push_back(std::move(ev)); }

void Engine::count_step() {
    if (++steps_ > step_cap_)
        fail(Errc::ResourceCap, "step budget of " + std::to_string(step_cap_) + " exceeded");
}

bool Engine::occurs(const TermPtr& hay, const TermPtr& needle) const {
    if (term_equal(hay, needle)) return true;
    for (const auto& c : hay->children())
        if (occurs(c, needle)) return true;
    return false;
}

TermPtr Engine::replace_all(const TermPtr& hay, const TermPtr& needle, const TermPtr& repl,
                            size_t& count) const {
    if (term_equal(hay, needle)) {
        ++count;
        return repl;
    }
    if (hay->is_kconst() || hay->children().empty()) return hay;
    std::vector<TermPtr> children;
    children.reserve(hay->children().size());
    bool changed = false;
    for (const auto& c : hay->children()) {
        TermPtr nc = replace_all(c, needle, repl, count);
        changed = changed || nc.get() != c.get();
        children.push_back(std::move(nc));
    }
    if (!changed) return hay;
    return Term::app(hay->head(), std::move(children));
}

// Leftmost-innermost application node whose arguments are all K-constants.
std::optional<Position> Engine::find_extend_pos(const TermPtr& t) const {
    if (t->is_kconst()) return std::nullopt;
    for (size_t i = 0; i < t->children().size(); ++i) {
        if (t->children()[i]->is_kconst()) continue;
        if (auto sub = find_extend_pos(t->children()[i])) {
            Position p;
            p.push_back(static_cast<int>(i) + 1);
            p.insert(p.end(), sub->begin(), sub->end());
            return p;
        }
    }
    return Position{};
}

std::string Engine::rule_to_string(const Rule& r) const {
    if (r.is_c) return "c" + std::to_string(r.lhs_const) + " -> c" + std::to_string(r.rhs);
    return to_string(rule_lhs_term(r), sig_) + " -> c" + std::to_string(r.rhs);
}

std::string Engine::eq_to_string(const EqRec& e) const {
    return to_string(e.lhs, sig_) + " = " + to_string(e.rhs, sig_);
}

void Engine::flatten() {
    if (phase_ != 1) return;

    // 0-ary symbols occurring in the input, in declaration order
    for (SymbolId s = 0; s < static_cast<SymbolId>(sig_.size()); ++s) {
        if (sig_.symbol(s).arity != 0) continue;
        TermPtr pat = Term::constant(s);
        std::vector<int> hit_eqs;
        for (const EqRec& e : eqs_)
            if (eq_alive_[static_cast<size_t>(e.id)] &&
                (occurs(e.lhs, pat) || occurs(e.rhs, pat)))
                hit_eqs.push_back(e.id);
        if (hit_eqs.empty()) continue;
        count_step();
        int c = new_const(KConstInfo{s, {}});
        int rid = add_d_rule(s, {}, c, false);
        TermPtr repl = Term::kconst(c);
        TraceEvent ev;
        ev.kind = StepKind::Extend;
        ev.produced_rules.push_back(rid);
        for (int eid : hit_eqs) {
            const EqRec old = eqs_[static_cast<size_t>(eid)];
            size_t cnt = 0;
            TermPtr nl = replace_all(old.lhs, pat, repl, cnt);
            TermPtr nr = replace_all(old.rhs, pat, repl, cnt);
            kill_eq(eid);
            int nid = push_eq(nl, nr, old.orig);
            ev.consumed_eqs.push_back(eid);
            ev.produced_eqs.push_back(nid);
        }
        ev.detail = std::string("EXTEND ") + rule_to_string(rules_[static_cast<size_t>(rid)]);
        record(std::move(ev));
    }

    // Compound occurrences, per equation in input order, left-to-right and
    // innermost-first. The left side abbreviates every occurrence with a
    // fresh constant; the right side is simplified against the current rules
    // first and extends only when no rule matches syntactically.
    int n_orig = 0;
    for (const EqRec& e : eqs_) n_orig = std::max(n_orig, e.orig + 1);
    for (int orig = 0; orig < n_orig; ++orig) {
        while (true) {
            int cur = -1;
            for (const EqRec& e : eqs_)
                if (eq_alive_[static_cast<size_t>(e.id)] && e.orig == orig) {
                    cur = e.id;
                    break;
                }
            if (cur < 0) break;
            const EqRec& e = eqs_[static_cast<size_t>(cur)];
            if (auto p = find_extend_pos(e.lhs)) {
                Position full{1};
                full.insert(full.end(), p->begin(), p->end());
                extend_at(cur, full);
                continue;
            }
            auto q = find_extend_pos(e.rhs);
            if (!q) break;
            TermPtr sub = subterm_at(e.rhs, *q);
            std::vector<int> args;
            for (const auto& c : sub->children()) args.push_back(c->kindex());
            int existing = find_syntactic_rule(sub->head(), args);
            if (existing >= 0) {
                simplify(cur, existing);
            } else {
                Position full{2};
                full.insert(full.end(), q->begin(), q->end());
                extend_at(cur, full);
            }
        }
    }
    phase_ = 2;
    for (const EqRec& e : eqs_)
        if (eq_alive_[static_cast<size_t>(e.id)]) classify_eq(e.id);
}

int Engine::extend_at(int eq_id, const Position& pos) {
    if (!eq_alive_[static_cast<size_t>(eq_id)])
        fail(Errc::NoOccurrence, "equation " + std::to_string(eq_id) + " is not in P");
    const EqRec e = eqs_[static_cast<size_t>(eq_id)];  // copy: eqs_ may grow below
    if (pos.empty()) fail(Errc::InvalidPosition, "position must select a side");
    TermPtr side = pos.front() == 1 ? e.lhs : e.rhs;
    Position rest(pos.begin() + 1, pos.end());
    TermPtr t = subterm_at(side, rest);
    if (t->is_kconst()) fail(Errc::NotFlatOverK, "subterm is already a K-constant");
    std::vector<int> args;
    for (const auto& c : t->children()) {
        if (!c->is_kconst())
            fail(Errc::NotFlatOverK,
                 "subterm " + to_string(t, sig_) + " has non-constant arguments");
        args.push_back(c->kindex());
    }
    count_step();
    int c = new_const(KConstInfo{t->head(), args});
    int rid = add_d_rule(t->head(), args, c, false);
    TermPtr repl = Term::kconst(c);
    TermPtr nl = e.lhs, nr = e.rhs;
    if (pos.front() == 1)
        nl = replace_at(e.lhs, rest, repl);
    else
        nr = replace_at(e.rhs, rest, repl);
    kill_eq(eq_id);
    int nid = push_eq(nl, nr, e.orig);
    TraceEvent ev;
    ev.kind = StepKind::Extend;
    ev.consumed_eqs.push_back(eq_id);
    ev.produced_eqs.push_back(nid);
    ev.produced_rules.push_back(rid);
    ev.detail = std::string("EXTEND ") + rule_to_string(rules_[static_cast<size_t>(rid)]);
    record(std::move(ev));
    return c;
}

int Engine::simplify(int eq_id, int rule_id) {
    if (!eq_alive_[static_cast<size_t>(eq_id)])
        fail(Errc::NoOccurrence, "equation " + std::to_string(eq_id) + " is not in P");
    if (!rule_alive_[static_cast<size_t>(rule_id)])
        fail(Errc::NoOccurrence, "rule " + std::to_string(rule_id) + " is not in R");
    const EqRec e = eqs_[static_cast<size_t>(eq_id)];  // copy: eqs_ may grow below
    const Rule& r = rules_[static_cast<size_t>(rule_id)];
    TermPtr pat = rule_lhs_term(r);
    TermPtr repl = Term::kconst(r.rhs);
    size_t cnt = 0;
    TermPtr nl = replace_all(e.lhs, pat, repl, cnt);
    TermPtr nr = replace_all(e.rhs, pat, repl, cnt);
    if (cnt == 0)
        fail(Errc::NoOccurrence, to_string(pat, sig_) + " does not occur in " + eq_to_string(e));
    count_step();
    std::string before = eq_to_string(e);
    kill_eq(eq_id);
    int nid = push_eq(nl, nr, e.orig);
    TraceEvent ev;
    ev.kind = StepKind::Simplify;
    ev.consumed_eqs.push_back(eq_id);
    ev.produced_eqs.push_back(nid);
    ev.via_rules.push_back(rule_id);
    ev.detail = "SIMPLIFY " + before + " via " + rule_to_string(r);
    record(std::move(ev));
    return nid;
}

int Engine::orient(int eq_id) {
    if (!eq_alive_[static_cast<size_t>(eq_id)])
        fail(Errc::NoOccurrence, "equation " + std::to_string(eq_id) + " is not in P");
    const EqRec e = eqs_[static_cast<size_t>(eq_id)];
    int rid = -1;
    if (e.lhs->is_kconst() && e.rhs->is_kconst()) {
        int a = e.lhs->kindex(), b = e.rhs->kindex();
        if (a == b) fail(Errc::NotOrientable, "cannot orient " + eq_to_string(e));
        count_step();
        rid = add_c_rule(std::min(a, b), std::max(a, b));
    } else {
        // a flat term over K on one side orients into a D-rule
        TermPtr flat = e.lhs->is_kconst() ? e.rhs : e.lhs;
        TermPtr konst = e.lhs->is_kconst() ? e.lhs : e.rhs;
        if (flat->is_kconst() || !konst->is_kconst())
            fail(Errc::NotOrientable, "cannot orient " + eq_to_string(e));
        std::vector<int> args;
        for (const auto& c : flat->children()) {
            if (!c->is_kconst()) fail(Errc::NotOrientable, "cannot orient " + eq_to_string(e));
            args.push_back(c->kindex());
        }
        count_step();
        rid = add_d_rule(flat->head(), std::move(args), konst->kindex(), true);
        if (rid < 0) fail(Errc::NotOrientable, "rule already present for " + eq_to_string(e));
    }
    kill_eq(eq_id);
    TraceEvent ev;
    ev.kind = StepKind::Orient;
    ev.consumed_eqs.push_back(eq_id);
    ev.produced_rules.push_back(rid);
    ev.detail = "ORIENT " + eq_to_string(e) + " as " + rule_to_string(rules_[static_cast<size_t>(rid)]);
    record(std::move(ev));
    return rid;
}

int Engine::deduce(int rule_a, int rule_b) {
    if (rule_a == rule_b) fail(Errc::NotEEqual, "DEDUCE needs two distinct rules");
    if (!rule_alive_[static_cast<size_t>(rule_a)] || !rule_alive_[static_cast<size_t>(rule_b)])
        fail(Errc::NoOccurrence, "both rules must be in R");
    const Rule& ra = rules_[static_cast<size_t>(rule_a)];
    const Rule& rb = rules_[static_cast<size_t>(rule_b)];
    if (ra.is_c || rb.is_c || ra.key != rb.key)
        fail(Errc::NotEEqual, "left-hand sides are not E-equal");
    // drop the rule whose rhs is smaller in index (larger in the ordering)
    const Rule* drop = &ra;
    const Rule* keep = &rb;
    if (rb.rhs < ra.rhs || (rb.rhs == ra.rhs && rb.id > ra.id)) {
        drop = &rb;
        keep = &ra;
    }
    count_step();
    kill_rule(drop->id);
    int nid = push_eq(Term::kconst(drop->rhs), Term::kconst(keep->rhs), -1);
    TraceEvent ev;
    ev.kind = StepKind::Deduce;
    ev.consumed_rules.push_back(drop->id);
    ev.produced_eqs.push_back(nid);
    ev.via_rules.push_back(keep->id);
    ev.detail = "DEDUCE " + rule_to_string(*drop) + " with " + rule_to_string(*keep) +
                " gives c" + std::to_string(drop->rhs) + " = c" + std::to_string(keep->rhs);
    record(std::move(ev));
    return nid;
}

void Engine::delete_eq(int eq_id) {
    if (!eq_alive_[static_cast<size_t>(eq_id)])
        fail(Errc::NoOccurrence, "equation " + std::to_string(eq_id) + " is not in P");
    const EqRec& e = eqs_[static_cast<size_t>(eq_id)];
    if (!ground_eq_mod_e(e.lhs, e.rhs, th_))
        fail(Errc::NotEEqual, "sides of " + eq_to_string(e) + " are not E-equal");
    count_step();
    kill_eq(eq_id);
    TraceEvent ev;
    ev.kind = StepKind::Delete;
    ev.consumed_eqs.push_back(eq_id);
    ev.detail = "DELETE " + eq_to_string(e);
    record(std::move(ev));
}

int Engine::compose_rule(int rule_id) {
    if (!rule_alive_[static_cast<size_t>(rule_id)])
        fail(Errc::NoOccurrence, "rule " + std::to_string(rule_id) + " is not in R");
    const Rule r = rules_[static_cast<size_t>(rule_id)];
    int d = cmap_[static_cast<size_t>(r.rhs)];
    if (d == -1) fail(Errc::NoMatch, "rhs of " + rule_to_string(r) + " is not C-reducible");
    int via = crule_id_[static_cast<size_t>(r.rhs)];
    count_step();
    kill_rule(rule_id);
    int nid = r.is_c ? add_c_rule(r.lhs_const, d) : add_d_rule(r.head, r.args, d, true);
    TraceEvent ev;
    ev.kind = StepKind::Compose;
    ev.consumed_rules.push_back(rule_id);
    if (nid >= 0) ev.produced_rules.push_back(nid);
    ev.via_rules.push_back(via);
    ev.detail = "COMPOSE " + rule_to_string(r) + " with " +
                rule_to_string(rules_[static_cast<size_t>(via)]) +
                (nid >= 0 ? " gives " + rule_to_string(rules_[static_cast<size_t>(nid)])
                          : " (absorbed)");
    record(std::move(ev));
    return nid;
}

int Engine::collapse_rule(int rule_id) {
    if (!rule_alive_[static_cast<size_t>(rule_id)])
        fail(Errc::NoOccurrence, "rule " + std::to_string(rule_id) + " is not in R");
    const Rule r = rules_[static_cast<size_t>(rule_id)];
    if (r.is_c) fail(Errc::NoMatch, "COLLAPSE applies to D-rules only");
    int c = -1;
    for (int a : r.args)
        if (cmap_[static_cast<size_t>(a)] != -1) {
            c = a;
            break;
        }
    if (c == -1) fail(Errc::NoMatch, "no argument of " + rule_to_string(r) + " is C-reducible");
    int d = cmap_[static_cast<size_t>(c)];
    int via = crule_id_[static_cast<size_t>(c)];
    std::vector<int> args = r.args;
    for (int& a : args)
        if (a == c) a = d;
    count_step();
    kill_rule(rule_id);
    int nid = add_d_rule(r.head, std::move(args), r.rhs, true);
    TraceEvent ev;
    ev.kind = StepKind::Collapse;
    ev.consumed_rules.push_back(rule_id);
    if (nid >= 0) ev.produced_rules.push_back(nid);
    ev.via_rules.push_back(via);
    ev.detail = "COLLAPSE " + rule_to_string(r) + " with " +
                rule_to_string(rules_[static_cast<size_t>(via)]) +
                (nid >= 0 ? " gives " + rule_to_string(rules_[static_cast<size_t>(nid)])
                          : " (absorbed)");
    record(std::move(ev));
    return nid;
}

int Engine::rewrite_b(int rule_id) {
    if (!rule_alive_[static_cast<size_t>(rule_id)])
        fail(Errc::NoOccurrence, "rule " + std::to_string(rule_id) + " is not in R");
    const Rule r = rules_[static_cast<size_t>(rule_id)];
    if (!b_ || r.is_c || r.head != b_->symbol || r.args.size() != 2)
        fail(Errc::NoMatch, "rule head is not the interpreted symbol");
    TermPtr rhs_term;  // r sigma of the matched B-rule
    if (r.args[0] == r.args[1] && (btag_has_i(b_->tag) || btag_has_n(b_->tag))) {
        rhs_term = btag_has_i(b_->tag) ? Term::kconst(r.args[0]) : Term::constant(*b_->zero);
    } else if (btag_has_u(b_->tag) && zero_rule_id_ != -1) {
        int z = rules_[static_cast<size_t>(zero_rule_id_)].rhs;
        if (r.args[1] == z)
            rhs_term = Term::kconst(r.args[0]);
        else if (r.args[0] == z)
            rhs_term = Term::kconst(r.args[1]);
    }
    if (!rhs_term) fail(Errc::NoMatch, rule_to_string(r) + " matches no interpreted rule");
    count_step();
    kill_rule(rule_id);
    int nid = push_eq(rhs_term, Term::kconst(r.rhs), -1);
    TraceEvent ev;
    ev.kind = StepKind::Rewrite;
    ev.consumed_rules.push_back(rule_id);
    ev.produced_eqs.push_back(nid);
    ev.detail = "REWRITE " + rule_to_string(r) + " gives " +
                eq_to_string(eqs_[static_cast<size_t>(nid)]);
    record(std::move(ev));
    return nid;
}

bool Engine::try_simplify() {
    while (!wl_simplify_.empty()) {
        int eq = *wl_simplify_.begin();
        wl_simplify_.erase(wl_simplify_.begin());
        if (!eq_alive_[static_cast<size_t>(eq)]) continue;
        const EqRec& e = eqs_[static_cast<size_t>(eq)];
        int rule = -1;
        if (e.lhs->is_kconst() && cmap_[static_cast<size_t>(e.lhs->kindex())] != -1)
            rule = crule_id_[static_cast<size_t>(e.lhs->kindex())];
        else if (e.rhs->is_kconst() && cmap_[static_cast<size_t>(e.rhs->kindex())] != -1)
            rule = crule_id_[static_cast<size_t>(e.rhs->kindex())];
        if (rule < 0) continue;
        simplify(eq, rule);
        return true;
    }
    if (zero_rule_id_ != -1) {
        while (!wl_nonflat_.empty()) {
            int eq = wl_nonflat_.front();
            if (!eq_alive_[static_cast<size_t>(eq)]) {
                wl_nonflat_.pop_front();
                continue;
            }
            wl_nonflat_.pop_front();
            simplify(eq, zero_rule_id_);
            return true;
        }
    }
    return false;
}

bool Engine::try_delete() {
    while (!wl_delete_.empty()) {
        int eq = *wl_delete_.begin();
        wl_delete_.erase(wl_delete_.begin());
        if (!eq_alive_[static_cast<size_t>(eq)]) continue;
        const EqRec& e = eqs_[static_cast<size_t>(eq)];
        if (!e.lhs->is_kconst() || !e.rhs->is_kconst() || e.lhs->kindex() != e.rhs->kindex())
            continue;
        delete_eq(eq);
        return true;
    }
    return false;
}

bool Engine::try_collapse() {
    while (!wl_collapse_.empty()) {
        int id = *wl_collapse_.begin();
        wl_collapse_.erase(wl_collapse_.begin());
        if (!rule_alive_[static_cast<size_t>(id)]) continue;
        const Rule& r = rules_[static_cast<size_t>(id)];
        bool reducible = false;
        for (int a : r.args)
            if (cmap_[static_cast<size_t>(a)] != -1) {
                reducible = true;
                break;
            }
        if (!reducible) continue;
        int nid = collapse_rule(id);
        if (nid >= 0) {
            const Rule& nr = rules_[static_cast<size_t>(nid)];
            for (int a : nr.args)
                if (cmap_[static_cast<size_t>(a)] != -1) {
                    wl_collapse_.insert(nid);
                    break;
                }
        }
        return true;
    }
    return false;
}

bool Engine::try_compose() {
    while (!wl_compose_.empty()) {
        int id = *wl_compose_.begin();
        wl_compose_.erase(wl_compose_.begin());
        if (!rule_alive_[static_cast<size_t>(id)]) continue;
        const Rule& r = rules_[static_cast<size_t>(id)];
        if (cmap_[static_cast<size_t>(r.rhs)] == -1) continue;
        compose_rule(id);
        return true;
    }
    return false;
}

bool Engine::try_rewrite() {
    while (!wl_rewrite_.empty()) {
        int id = *wl_rewrite_.begin();
        wl_rewrite_.erase(wl_rewrite_.begin());
        if (!rule_alive_[static_cast<size_t>(id)]) continue;
        const Rule& r = rules_[static_cast<size_t>(id)];
        if (!b_ || r.is_c || r.head != b_->symbol) continue;
        bool in_match = r.args[0] == r.args[1] && (btag_has_i(b_->tag) || btag_has_n(b_->tag));
        bool u_match = false;
        if (btag_has_u(b_->tag) && zero_rule_id_ != -1) {
            int z = rules_[static_cast<size_t>(zero_rule_id_)].rhs;
            u_match = r.args[0] == z || r.args[1] == z;
        }
        if (!in_match && !u_match) continue;
        rewrite_b(id);
        return true;
    }
    return false;
}

bool Engine::try_deduce() {
    while (!wl_deduce_.empty()) {
        auto key = *wl_deduce_.begin();
        wl_deduce_.erase(wl_deduce_.begin());
        int a = key[2], b = key[3];
        if (!rule_alive_[static_cast<size_t>(a)] || !rule_alive_[static_cast<size_t>(b)]) continue;
        if (rules_[static_cast<size_t>(a)].key != rules_[static_cast<size_t>(b)].key) continue;
        deduce(a, b);
        return true;
    }
    return false;
}

// 0 = nothing to do, 1 = fired, 2 = rerouted to a higher-priority list
int Engine::try_orient() {
    while (!wl_orient_.empty()) {
        int eq = *wl_orient_.begin();
        wl_orient_.erase(wl_orient_.begin());
        if (!eq_alive_[static_cast<size_t>(eq)]) continue;
        const EqRec& e = eqs_[static_cast<size_t>(eq)];
        if (!e.lhs->is_kconst() || !e.rhs->is_kconst()) continue;
        int a = e.lhs->kindex(), b = e.rhs->kindex();
        if (a == b) {
            wl_delete_.insert(eq);
            return 2;
        }
        if (cmap_[static_cast<size_t>(a)] != -1 || cmap_[static_cast<size_t>(b)] != -1) {
            wl_simplify_.insert(eq);
            return 2;
        }
        orient(eq);
        return 1;
    }
    return 0;
}

bool Engine::try_extend_zero() {
    while (!wl_nonflat_.empty()) {
        int eq = wl_nonflat_.front();
        wl_nonflat_.pop_front();
        if (!eq_alive_[static_cast<size_t>(eq)]) continue;
        const EqRec& e = eqs_[static_cast<size_t>(eq)];
        Position pos{e.lhs->is_kconst() ? 2 : 1};
        extend_at(eq, pos);
        return true;
    }
    return false;
}

bool Engine::apply_next() {
    while (true) {
        if (try_simplify()) return true;
        if (try_delete()) return true;
        if (try_collapse()) return true;
        if (try_compose()) return true;
        if (try_rewrite()) return true;
        if (try_deduce()) return true;
        int o = try_orient();
        if (o == 1) return true;
        if (o == 2) continue;
        if (try_extend_zero()) return true;
        return false;
    }
}

void Engine::complete() {
    if (phase_ == 1) flatten();
    while (apply_next()) {
    }
    assert(n_alive_eqs_ == 0);
}

size_t Engine::alive_eq_count() const { return n_alive_eqs_; }

std::vector<Rule> Engine::alive_drules() const {
    std::vector<Rule> out;
    for (const Rule& r : rules_)
        if (rule_alive_[static_cast<size_t>(r.id)] && !r.is_c) out.push_back(r);
    std::sort(out.begin(), out.end(), [](const Rule& a, const Rule& b) {
        return a.rhs != b.rhs ? a.rhs < b.rhs : a.id < b.id;
    });
    return out;
}

std::vector<std::pair<int, int>> Engine::alive_crules() const {
    std::vector<std::pair<int, int>> out;
    for (const Rule& r : rules_)
        if (rule_alive_[static_cast<size_t>(r.id)] && r.is_c) out.emplace_back(r.lhs_const, r.rhs);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> Engine::zero_repr() const {
    if (zero_rule_id_ == -1) return std::nullopt;
    return rules_[static_cast<size_t>(zero_rule_id_)].rhs;
}

EngineResult Engine::take_result() {
    EngineResult res;
    res.num_consts = n_consts_;
    res.provenance = prov_;
    res.rules = rules_;
    res.rule_alive = rule_alive_;
    res.eqs = eqs_;
    res.eq_alive = eq_alive_;
    res.trace = std::move(trace_);
    res.steps = steps_;
    return res;
}

EngineResult run_fair_mu(std::vector<Equation> p0, const Signature& sig, const PermTheory& th,
                         EngineCaps caps) {
    Engine eng(std::move(p0), sig, th, caps);
    eng.complete();
    return eng.take_result();
}

}  // namespace permcc
