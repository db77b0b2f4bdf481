// Problem-file parsing and the end-to-end solve pipeline shared by the CLI
// and the python bindings.
//
// Line-oriented grammar, '#' starts a comment:
//   sym <name>/<arity>
//   perm <name> : <i1> <i2> ... <in>      image list of the shuffled side
//   permcycle <name> : (1 2)(3 4)         cycle-notation convenience form
//   theory <g> <I|N|U|IU|NU> [zero=<sym>]
//   axiom <term> = <term>
//   query <term> = <term>
// Terms are prefix applications: f(a,g(b,c)); constants are bare names.

#pragma once

#include <string>
#include <vector>

#include "permcc/engine.hpp"
#include "permcc/etheory.hpp"
#include "permcc/rewriter.hpp"
#include "permcc/term.hpp"

namespace permcc {

struct ProblemFile {
    Signature sig;
    std::vector<Equation> axioms;
    std::vector<Equation> queries;
};

// Throws Error with ParseError / UnknownSymbol / ArityMismatch /
// NotABijection codes; messages carry line and column.
ProblemFile parse_problem(const std::string& text);

// Parses one prefix term against an existing signature.
TermPtr parse_term_text(const std::string& text, const Signature& sig);

struct SolveCaps {
    size_t group_cap = 1'000'000;
    size_t step_cap = 0;  // 0 = derived from input size
};

struct SolveOutput {
    PermTheory theory;
    EngineResult result;
    std::vector<bool> answers;  // per query: equal under the closure
};

SolveOutput solve_problem(const ProblemFile& pf, const SolveCaps& caps = {});

// Rule rendering used by --dump-rules and the bindings: "f(c0,c1) -> c2".
std::string format_rule(const Rule& r, const Signature& sig);
std::vector<std::string> format_drules(const EngineResult& res, const Signature& sig);
std::vector<std::string> format_crules(const EngineResult& res);

}  // namespace permcc
