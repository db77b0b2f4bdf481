#include "permcc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "permcc/bench.hpp"
#include "permcc/oracle.hpp"
#include "permcc/problem.hpp"

namespace permcc {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::ResourceCap:
        case Errc::GroupTooLarge:
        case Errc::UniverseTooLarge: return 2;
        default: return 1;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<size_t> parse_sizes(const std::string& arg) {
    std::vector<size_t> sizes;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        sizes.push_back(static_cast<size_t>(std::stoull(item)));
    }
    if (sizes.empty()) fail(Errc::ParseError, "--sizes needs a comma-separated list");
    return sizes;
}

int cmd_solve(const std::string& path, bool trace, bool dump_rules, size_t cap_group,
              size_t cap_steps, std::ostream& out) {
    ProblemFile pf = parse_problem(read_file(path));
    SolveCaps caps;
    caps.group_cap = cap_group;
    caps.step_cap = cap_steps;
    SolveOutput res = solve_problem(pf, caps);
    for (bool eq : res.answers) out << (eq ? "EQUAL" : "NOT-EQUAL") << "\n";
    if (dump_rules) {
        for (const std::string& line : format_drules(res.result, pf.sig)) out << line << "\n";
        for (const std::string& line : format_crules(res.result)) out << line << "\n";
    }
    if (trace) {
        for (const TraceEvent& ev : res.result.trace) out << ev.detail << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& path, bool cross_check, size_t cap_universe, size_t cap_group,
               std::ostream& out) {
    ProblemFile pf = parse_problem(read_file(path));
    OracleCaps ocaps;
    ocaps.universe_cap = cap_universe;
    std::vector<TermPtr> queries;
    for (const Equation& q : pf.queries) {
        queries.push_back(q.lhs);
        queries.push_back(q.rhs);
    }
    OracleEngine oracle(pf.axioms, queries, pf.sig, ocaps);
    std::vector<bool> oracle_answers;
    for (const Equation& q : pf.queries) oracle_answers.push_back(oracle.decide(q.lhs, q.rhs));
    if (!cross_check) {
        for (bool eq : oracle_answers) out << (eq ? "EQUAL" : "NOT-EQUAL") << "\n";
        return 0;
    }
    SolveCaps caps;
    caps.group_cap = cap_group;
    SolveOutput res = solve_problem(pf, caps);
    bool all_agree = true;
    for (size_t i = 0; i < oracle_answers.size(); ++i) {
        bool solver = res.answers[i];
        bool orc = oracle_answers[i];
        if (solver == orc) {
            out << "AGREE " << (solver ? "EQUAL" : "NOT-EQUAL") << "\n";
        } else {
            all_agree = false;
            out << "DISAGREE solver=" << (solver ? "EQUAL" : "NOT-EQUAL")
                << " oracle=" << (orc ? "EQUAL" : "NOT-EQUAL") << "\n";
        }
    }
    return all_agree ? 0 : 1;
}

int cmd_bench(const std::string& sizes_arg, uint64_t seed, std::ostream& out) {
    std::vector<size_t> sizes = parse_sizes(sizes_arg);
    std::vector<BenchRow> rows = run_bench(sizes, seed);
    out << "n trace_len time_ms\n";
    for (const BenchRow& r : rows)
        out << r.n << " " << r.trace_len << " " << std::fixed << std::setprecision(3) << r.millis
            << "\n";
    out << "slope trace_len " << std::fixed << std::setprecision(3) << trace_slope(rows) << "\n";
    out << "slope time_ms " << std::fixed << std::setprecision(3) << time_slope(rows) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"congruence closure of ground equations modulo permutation equations"};
    app.require_subcommand(1);

    std::string file;
    bool trace = false, dump_rules = false, cross_check = false;
    size_t cap_group = 1'000'000, cap_steps = 0, cap_universe = 20'000;
    std::string sizes = "50,100,200,400,800,1600";
    uint64_t seed = 1;

    CLI::App* solve = app.add_subcommand("solve", "complete the axioms and decide the queries");
    solve->add_option("file", file, "problem file")->required();
    solve->add_flag("--trace", trace, "print one line per inference step");
    solve->add_flag("--dump-rules", dump_rules, "print the final D-rules and C-rules");
    solve->add_option("--cap-group", cap_group, "permutation group size cap");
    solve->add_option("--cap-steps", cap_steps, "inference step cap (0 = auto)");

    CLI::App* oracle = app.add_subcommand("oracle", "decide the queries by brute force");
    oracle->add_option("file", file, "problem file")->required();
    oracle->add_flag("--cross-check", cross_check, "run both deciders and report agreement");
    oracle->add_option("--cap-universe", cap_universe, "oracle universe size cap");
    oracle->add_option("--cap-group", cap_group, "permutation group size cap");

    CLI::App* bench = app.add_subcommand("bench", "random-instance scaling table");
    bench->add_option("--sizes", sizes, "comma-separated instance sizes");
    bench->add_option("--seed", seed, "instance generator seed");

    std::vector<char*> argv;
    std::vector<std::string> storage;
    storage.push_back("permcc");
    storage.insert(storage.end(), args.begin(), args.end());
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        int rc = app.exit(e, msg, msg);
        (rc == 0 ? out : err) << msg.str();
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(file, trace, dump_rules, cap_group, cap_steps, out);
        if (oracle->parsed()) return cmd_oracle(file, cross_check, cap_universe, cap_group, out);
        if (bench->parsed()) return cmd_bench(sizes, seed, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace permcc
