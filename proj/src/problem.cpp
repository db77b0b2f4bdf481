#include "permcc/problem.hpp"

#include <cctype>
#include <sstream>

namespace permcc {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t')) advance();
    }
    std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }
};

[[noreturn]] void parse_fail(const Cursor& c, const std::string& msg) {
    fail(Errc::ParseError, "line " + c.where() + ": " + msg);
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_ident(Cursor& c) {
    c.skip_ws();
    if (c.done() || !ident_char(c.peek())) parse_fail(c, "expected an identifier");
    std::string out;
    while (!c.done() && ident_char(c.peek())) {
        out += c.peek();
        c.advance();
    }
    return out;
}

int read_int(Cursor& c) {
    c.skip_ws();
    if (c.done() || !std::isdigit(static_cast<unsigned char>(c.peek())))
        parse_fail(c, "expected a number");
    int v = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + (c.peek() - '0');
        c.advance();
    }
    return v;
}

void expect(Cursor& c, char ch) {
    c.skip_ws();
    if (c.done() || c.peek() != ch)
        parse_fail(c, std::string("expected '") + ch + "'");
    c.advance();
}

bool try_consume(Cursor& c, char ch) {
    c.skip_ws();
    if (!c.done() && c.peek() == ch) {
        c.advance();
        return true;
    }
    return false;
}

TermPtr parse_term(Cursor& c, const Signature& sig) {
    c.skip_ws();
    std::string where = c.where();
    std::string name = read_ident(c);
    auto id = sig.find(name);
    if (!id) fail(Errc::UnknownSymbol, "line " + where + ": symbol '" + name + "' is not declared");
    std::vector<TermPtr> children;
    if (try_consume(c, '(')) {
        if (!try_consume(c, ')')) {
            do {
                children.push_back(parse_term(c, sig));
            } while (try_consume(c, ','));
            expect(c, ')');
        }
    }
    int arity = sig.symbol(*id).arity;
    if (static_cast<int>(children.size()) != arity)
        fail(Errc::ArityMismatch, "line " + where + ": '" + name + "' expects " +
                                      std::to_string(arity) + " arguments, got " +
                                      std::to_string(children.size()));
    return Term::app(*id, std::move(children));
}

void end_of_line(Cursor& c) {
    c.skip_ws();
    if (!c.done() && c.peek() == '#') {
        while (!c.done() && c.peek() != '\n') c.advance();
    }
    if (!c.done() && c.peek() != '\n') parse_fail(c, "unexpected trailing input");
}

Equation parse_equation(Cursor& c, const Signature& sig) {
    TermPtr lhs = parse_term(c, sig);
    expect(c, '=');
    TermPtr rhs = parse_term(c, sig);
    return Equation{lhs, rhs};
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    Cursor c{text};
    // theory declarations are resolved after all symbols are known
    struct PendingTheory {
        std::string g, tag, zero;
        std::string where;
        bool has_zero = false;
    };
    std::vector<PendingTheory> theories;

    while (!c.done()) {
        c.skip_ws();
        if (c.done()) break;
        if (c.peek() == '\n') {
            c.advance();
            continue;
        }
        if (c.peek() == '#') {
            while (!c.done() && c.peek() != '\n') c.advance();
            continue;
        }
        std::string kw_where = c.where();
        std::string kw = read_ident(c);
        if (kw == "sym") {
            std::string name = read_ident(c);
            expect(c, '/');
            int arity = read_int(c);
            pf.sig.add_symbol(name, arity);
        } else if (kw == "perm" || kw == "permcycle") {
            std::string name = read_ident(c);
            auto found = pf.sig.find(name);
            if (!found)
                fail(Errc::UnknownSymbol,
                     "line " + kw_where + ": symbol '" + name + "' is not declared");
            SymbolId id = *found;
            int arity = pf.sig.symbol(id).arity;
            expect(c, ':');
            if (kw == "perm") {
                std::vector<int> images;
                for (int i = 0; i < arity; ++i) images.push_back(read_int(c));
                pf.sig.add_perm_generator(id, Permutation::from_images(images));
            } else {
                std::vector<std::vector<int>> cycles;
                while (try_consume(c, '(')) {
                    std::vector<int> cyc;
                    while (!try_consume(c, ')')) cyc.push_back(read_int(c));
                    cycles.push_back(std::move(cyc));
                }
                if (cycles.empty()) parse_fail(c, "expected at least one cycle");
                pf.sig.add_perm_generator(id, Permutation::from_cycles(arity, cycles));
            }
        } else if (kw == "theory") {
            PendingTheory t;
            t.where = kw_where;
            t.g = read_ident(c);
            t.tag = read_ident(c);
            c.skip_ws();
            if (!c.done() && ident_char(c.peek())) {
                std::string z = read_ident(c);
                if (z != "zero") parse_fail(c, "expected zero=<symbol>");
                expect(c, '=');
                t.zero = read_ident(c);
                t.has_zero = true;
            }
            theories.push_back(std::move(t));
        } else if (kw == "axiom") {
            pf.axioms.push_back(parse_equation(c, pf.sig));
        } else if (kw == "query") {
            pf.queries.push_back(parse_equation(c, pf.sig));
        } else {
            fail(Errc::ParseError, "line " + kw_where + ": unknown directive '" + kw + "'");
        }
        end_of_line(c);
    }

    for (const PendingTheory& t : theories) {
        BTheory b;
        auto g = pf.sig.find(t.g);
        if (!g)
            fail(Errc::UnknownSymbol, "line " + t.where + ": symbol '" + t.g + "' is not declared");
        b.symbol = *g;
        auto tag = btag_from_name(t.tag);
        if (!tag) fail(Errc::ParseError, "line " + t.where + ": unknown theory tag '" + t.tag + "'");
        b.tag = *tag;
        if (t.has_zero) {
            auto z = pf.sig.find(t.zero);
            if (!z)
                fail(Errc::UnknownSymbol,
                     "line " + t.where + ": symbol '" + t.zero + "' is not declared");
            b.zero = *z;
        }
        pf.sig.set_b_theory(b);
    }
    pf.sig.validate();
    for (const Equation& e : pf.axioms) {
        validate(e.lhs, pf.sig);
        validate(e.rhs, pf.sig);
    }
    for (const Equation& e : pf.queries) {
        validate(e.lhs, pf.sig);
        validate(e.rhs, pf.sig);
    }
    return pf;
}

TermPtr parse_term_text(const std::string& text, const Signature& sig) {
    Cursor c{text};
    TermPtr t = parse_term(c, sig);
    c.skip_ws();
    if (!c.done() && c.peek() != '\n') parse_fail(c, "unexpected trailing input");
    return t;
}

SolveOutput solve_problem(const ProblemFile& pf, const SolveCaps& caps) {
    SolveOutput out;
    out.theory = decompose(pf.sig, caps.group_cap);
    EngineCaps ec;
    ec.step_cap = caps.step_cap;
    out.result = run_fair_mu(pf.axioms, pf.sig, out.theory, ec);
    ClosureSystem cs(out.result, pf.sig, out.theory);
    out.answers.reserve(pf.queries.size());
    for (const Equation& q : pf.queries) out.answers.push_back(cs.decide_word(q.lhs, q.rhs));
    return out;
}

std::string format_rule(const Rule& r, const Signature& sig) {
    if (r.is_c) return "c" + std::to_string(r.lhs_const) + " -> c" + std::to_string(r.rhs);
    std::string out = sig.symbol(r.head).name;
    if (!r.args.empty()) {
        out += "(";
        for (size_t i = 0; i < r.args.size(); ++i) {
            if (i) out += ",";
            out += "c" + std::to_string(r.args[i]);
        }
        out += ")";
    }
    out += " -> c" + std::to_string(r.rhs);
    return out;
}

std::vector<std::string> format_drules(const EngineResult& res, const Signature& sig) {
    std::vector<std::string> out;
    for (const Rule& r : res.final_drules()) out.push_back(format_rule(r, sig));
    return out;
}

std::vector<std::string> format_crules(const EngineResult& res) {
    std::vector<std::string> out;
    for (const auto& [lhs, rhs] : res.final_crules())
        out.push_back("c" + std::to_string(lhs) + " -> c" + std::to_string(rhs));
    return out;
}

}  // namespace permcc
